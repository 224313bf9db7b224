"""Exact arrangement of a diagram inside the polygon: certificates and faces.

Boundary points get rational circle coordinates through the parametrization
t -> ((1-t^2)/(1+t^2), 2t/(1+t^2)), so chord crossings, their order along each
chord, and the face structure are all exact.  Triple points cannot be told
apart from genuine transverse pictures combinatorially, so the boundary
parameters are re-jittered deterministically until all crossing points are
pairwise distinct; collinear degeneracies are impossible since a line meets
the circle at most twice.

The taut certificate is word-level.  An arc of a strand between two
consecutive crossings along it is crossing-free, so a candidate bigon (two
crossing-free arcs joining the same two double points) bounds an embedded
empty disc as soon as its boundary loop is null-homotopic, and a monogon is a
crossing-free loop at one double point with trivial holonomy.  A diagram with
no monogons and no bigons realizes minimal position.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .errors import ModelInconsistency
from .polygon import PolygonModel
from .words import make_surface, normalize_word

_MAX_JITTER_RETRIES = 8


# -- exact geometry -----------------------------------------------------------


def _circle_point(t: Fraction):
    d = 1 + t * t
    return ((1 - t * t) / d, 2 * t / d)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _segment_meet(a, b, c, d):
    """Exact meet point and parameters of segments a-b and c-d."""
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    den = r[0] * s[1] - r[1] * s[0]
    if den == 0:
        raise ModelInconsistency("interleaved chords cannot be parallel")
    q = (c[0] - a[0], c[1] - a[1])
    lam = (q[0] * s[1] - q[1] * s[0]) / den
    mu = (q[0] * r[1] - q[1] * r[0]) / den
    if not (0 < lam < 1 and 0 < mu < 1):
        raise ModelInconsistency("crossing fell outside its chords")
    return (a[0] + lam * r[0], a[1] + lam * r[1]), lam, mu


class Geometry:
    """Exact placement of one diagram: points, chords, ordered crossings."""

    def __init__(self, model: PolygonModel, diagram):
        self.model = model
        self.diagram = diagram
        for retry in range(_MAX_JITTER_RETRIES):
            if self._place(retry):
                return
        raise ModelInconsistency("could not reach generic position")

    def _place(self, retry: int) -> bool:
        model, diagram = self.model, self.diagram
        n4 = model.n_sides
        counts = [0] * n4
        for k in range(1, 2 * model.genus + 1):
            m = len(diagram.slot_orders[k - 1])
            counts[model.side_of[k]] = m
            counts[model.side_of[-k]] = m
        sequence = []  # cyclic ccw boundary order
        for s in range(n4):
            sequence.append(("corner", s))
            for rank in range(counts[s]):
                sequence.append((s, rank))
        big = 1009 * len(sequence) * len(sequence)
        self.coord = {}
        for n, key in enumerate(sequence):
            t = Fraction(2 * n - (len(sequence) - 1), 2)
            t += Fraction(retry * n * n, big)
            self.coord[key] = _circle_point(t)
        self.sequence = sequence
        self.side_counts = counts

        self.chord_ids = sorted(
            (i, p) for i, chords in enumerate(diagram.chords)
            for p in range(len(chords))
        )
        self.chord_ends = {
            (i, p): diagram.chord_points[i][p] for (i, p) in self.chord_ids
        }
        points = {}
        self.on_chord = {cid: [] for cid in self.chord_ids}
        for c1, c2 in sorted(diagram.crossings):
            a, b = self.chord_ends[c1]
            c, d = self.chord_ends[c2]
            pt, lam, mu = _segment_meet(
                self.coord[a], self.coord[b], self.coord[c], self.coord[d]
            )
            if pt in points:
                return False  # triple point; jitter and retry
            points[pt] = (c1, c2)
            self.on_chord[c1].append((lam, (c1, c2)))
            self.on_chord[c2].append((mu, (c1, c2)))
        self.crossing_point = {v: k for k, v in points.items()}
        for cid in self.chord_ids:
            self.on_chord[cid].sort()
        return True

    def itineraries(self):
        """Per strand, the cyclic crossing sequence with chord positions."""
        out = []
        for i, route in enumerate(self.diagram.routes):
            entries = []
            for p in range(len(route)):
                for lam, crossing in self.on_chord[(i, p)]:
                    entries.append((p, lam, crossing))
            out.append(entries)
        return out


# -- taut certificate ---------------------------------------------------------


def _arc_events(route_len: int, p_from: int, p_to: int, wraps: bool) -> int:
    span = (p_to - p_from) % route_len
    if wraps and span == 0:
        return route_len
    return span


def _arc_word(model, route, p_from: int, n_events: int):
    out = ()
    for t in range(n_events):
        out = out + model.sigma[route[(p_from + 1 + t) % len(route)]]
    return out


@dataclass(frozen=True)
class Arc:
    """Crossing-free piece of a strand between consecutive double points."""

    strand: int
    chord_from: int   # route position of the chord carrying the start point
    n_events: int     # edge crossings strictly inside the arc
    x_from: tuple     # crossing id at the start
    x_to: tuple       # crossing id at the end

    def sides(self, route):
        n = len(route)
        return tuple(
            route[(self.chord_from + 1 + t) % n] for t in range(self.n_events)
        )


def certify_taut(model: PolygonModel, diagram):
    """Return None if no monogon or bigon exists, else a witness.

    A monogon witness is ("monogon", arc); a bigon witness is
    ("bigon", arc_a, arc_b) where both arcs join the same two double points
    (arc_b possibly running opposite to arc_a).
    """
    if not diagram.crossings:
        return None
    surface = make_surface(model.genus)
    geo = Geometry(model, diagram)
    arcs = {}  # (x_from, x_to) -> list of (word, Arc)
    for i, itin in enumerate(geo.itineraries()):
        route = diagram.routes[i]
        m = len(itin)
        for k in range(m):
            p1, _, x = itin[k]
            p2, _, y = itin[(k + 1) % m]
            wraps = k + 1 == m
            n_ev = _arc_events(len(route), p1, p2, wraps)
            word = _arc_word(model, route, p1, n_ev)
            arc = Arc(i, p1, n_ev, x, y)
            if x == y:
                if normalize_word(surface, word) == ():
                    return ("monogon", arc)
            else:
                inv = tuple(-l for l in reversed(word))
                for prev_word, prev_arc in arcs.get((x, y), ()):
                    if normalize_word(surface, prev_word + inv) == ():
                        return ("bigon", arc, prev_arc)
                for prev_word, prev_arc in arcs.get((y, x), ()):
                    if normalize_word(surface, prev_word + word) == ():
                        return ("bigon", arc, prev_arc)
                arcs.setdefault((x, y), []).append((word, arc))
    return None


# -- complement faces ----------------------------------------------------------


@dataclass(frozen=True)
class ComplementReport:
    """Census of the complement of the strands in the surface."""

    crossing_count: int
    euler_total: int
    face_count: int          # simply connected components
    corner_counts: tuple     # per polygonal face, sorted descending
    region_eulers: tuple     # per component, sorted

    def __str__(self):
        corners = ",".join(str(c) for c in self.corner_counts) or "-"
        return (
            f"crossings={self.crossing_count} euler={self.euler_total} "
            f"faces={self.face_count} corners={corners}"
        )


def _angle_cmp(d1, d2):
    h1 = 0 if (d1[1] > 0 or (d1[1] == 0 and d1[0] > 0)) else 1
    h2 = 0 if (d2[1] > 0 or (d2[1] == 0 and d2[0] > 0)) else 1
    if h1 != h2:
        return -1 if h1 < h2 else 1
    c = d1[0] * d2[1] - d1[1] * d2[0]
    if c == 0:
        raise ModelInconsistency("coincident directions at a vertex")
    return -1 if c > 0 else 1


class _Faces:
    def __init__(self, geo: Geometry):
        self.geo = geo
        self._build_graph()
        self._trace()

    def _build_graph(self):
        geo = self.geo
        self.pos = {}
        self.edges = []  # (node u, node v, tag)
        for key in geo.sequence:
            self.pos[("b", key)] = geo.coord[key]
        for crossing, pt in geo.crossing_point.items():
            self.pos[("x", crossing)] = pt
        # boundary arcs, tagged with (side, piece index)
        seq = geo.sequence
        piece = {}
        for n, key in enumerate(seq):
            nxt = seq[(n + 1) % len(seq)]
            side = key[1] if key[0] == "corner" else key[0]
            idx = piece.get(side, 0)
            piece[side] = idx + 1
            self.edges.append((("b", key), ("b", nxt), ("arc", side, idx)))
        # chord segments
        for cid in geo.chord_ids:
            a, b = geo.chord_ends[cid]
            chain = [("b", a)]
            chain += [("x", c) for _, c in geo.on_chord[cid]]
            chain.append(("b", b))
            for u, v in zip(chain, chain[1:]):
                self.edges.append((u, v, ("chord", cid)))

    def _trace(self):
        outgoing = {}
        for eid, (u, v, _tag) in enumerate(self.edges):
            outgoing.setdefault(u, []).append((eid, 1))
            outgoing.setdefault(v, []).append((eid, -1))

        def direction(node, half):
            eid, sgn = half
            u, v, _ = self.edges[eid]
            a, b = (u, v) if sgn == 1 else (v, u)
            pa, pb = self.pos[a], self.pos[b]
            return (pb[0] - pa[0], pb[1] - pa[1])

        index_at = {}
        for node, halves in outgoing.items():
            halves.sort(key=cmp_to_key(
                lambda h1, h2: _angle_cmp(direction(node, h1), direction(node, h2))
            ))
            for idx, h in enumerate(halves):
                index_at[(node, h)] = idx
        self.outgoing = outgoing

        def head(half):
            eid, sgn = half
            u, v, _ = self.edges[eid]
            return v if sgn == 1 else u

        face_of = {}
        faces = []
        for eid in range(len(self.edges)):
            for sgn in (1, -1):
                start = (eid, sgn)
                if start in face_of:
                    continue
                cycle = []
                h = start
                while h not in face_of:
                    face_of[h] = len(faces)
                    cycle.append(h)
                    node = head(h)
                    rev = (h[0], -h[1])
                    idx = index_at[(node, rev)]
                    ring = self.outgoing[node]
                    h = ring[(idx - 1) % len(ring)]
                if h != start:
                    raise ModelInconsistency("face tracing did not close up")
                faces.append(tuple(cycle))
        self.faces = faces
        self.face_of = face_of

        def tail(half):
            eid, sgn = half
            u, v, _ = self.edges[eid]
            return u if sgn == 1 else v

        self.outer = None
        for fid, cycle in enumerate(faces):
            area = 0
            pts = [self.pos[tail(h)] for h in cycle]
            for a, b in zip(pts, pts[1:] + pts[:1]):
                area += a[0] * b[1] - a[1] * b[0]
            if area < 0:
                if self.outer is not None:
                    raise ModelInconsistency("two outer faces")
                self.outer = fid
        if self.outer is None:
            raise ModelInconsistency("no outer face")
        self._tail = tail


def complement_census(model: PolygonModel, diagram) -> ComplementReport:
    geo = Geometry(model, diagram)
    tracer = _Faces(geo)
    faces = tracer.faces
    face_of = tracer.face_of

    # the inner face along each boundary arc, keyed by (side, piece)
    arc_face = {}
    for eid, (u, v, tag) in enumerate(tracer.edges):
        if tag[0] != "arc":
            continue
        fid = face_of[(eid, 1)]
        if fid == tracer.outer:
            fid = face_of[(eid, -1)]
        arc_face[(tag[1], tag[2])] = fid

    parent = list(range(len(faces)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    glue_pairs = []
    for s in range(model.n_sides):
        p = model.partner[s]
        if s > p:
            continue
        m = geo.side_counts[s]
        if geo.side_counts[p] != m:
            raise ModelInconsistency("glued sides with unequal point counts")
        for u in range(m + 1):
            fa = arc_face[(s, u)]
            fb = arc_face[(p, m - u)]
            union(fa, fb)
            glue_pairs.append((fa, fb))

    corner_faces = set()
    for eid, (u, v, tag) in enumerate(tracer.edges):
        for node in (u, v):
            if node[0] == "b" and node[1][0] == "corner":
                for sgn in (1, -1):
                    fid = face_of[(eid, sgn)]
                    if fid != tracer.outer:
                        corner_faces.add(find(fid))
    if len(corner_faces) != 1:
        raise ModelInconsistency("polygon vertex split across regions")
    vertex_region = corner_faces.pop()

    region_faces = {}
    for fid in range(len(faces)):
        if fid == tracer.outer:
            continue
        region_faces.setdefault(find(fid), []).append(fid)
    region_pairs = {r: 0 for r in region_faces}
    for fa, _fb in glue_pairs:
        region_pairs[find(fa)] += 1

    face_corners = {}
    for fid, cycle in enumerate(tracer.faces):
        face_corners[fid] = sum(
            1 for h in cycle if tracer._tail(h)[0] == "x"
        )

    eulers = {}
    corners = {}
    for r, members in region_faces.items():
        chi = len(members) - region_pairs[r]
        if r == find(vertex_region):
            chi += 1
        eulers[r] = chi
        corners[r] = sum(face_corners[f] for f in members)

    crossing_count = diagram.crossing_count
    euler_total = sum(eulers.values())
    expected = 2 - 2 * model.genus + crossing_count
    if euler_total != expected:
        raise ModelInconsistency(
            f"complement euler {euler_total}, expected {expected}"
        )
    discs = [r for r in eulers if eulers[r] == 1]
    corner_counts = tuple(sorted((corners[r] for r in discs), reverse=True))
    return ComplementReport(
        crossing_count=crossing_count,
        euler_total=euler_total,
        face_count=len(discs),
        corner_counts=corner_counts,
        region_eulers=tuple(sorted(eulers.values())),
    )
