"""Independent brute-force checks used to freeze expected test values.

The production comparator orders edge crossings by developing strands through
the tiling.  The oracle here ignores it entirely: it enumerates every slot
permutation on every edge (capped), counts interleaved chord pairs from
scratch, and minimizes.  Agreement pins both the comparator and the counting
code.
"""
from itertools import permutations, product

from curvetrace.curves import _route_seeds
from curvetrace.polygon import polygon_model
from curvetrace.words import make_surface

PERM_CAP = 200_000


def _route_candidates(genus, word):
    return list(_route_seeds(genus, word))


def min_crossings(genus, words, cap=PERM_CAP):
    """(min total, min cross-strand) crossings over candidate routes and all
    slot permutations.  None if the search space exceeds the cap."""
    model = polygon_model(genus)
    candidate_lists = [_route_candidates(genus, w) for w in words]
    best_total = None
    best_cross = None
    for routes in product(*candidate_lists):
        res = _min_for_routes(model, routes, cap)
        if res is None:
            return None
        total, cross = res
        best_total = total if best_total is None else min(best_total, total)
        best_cross = cross if best_cross is None else min(best_cross, cross)
    return best_total, best_cross


def _min_for_routes(model, routes, cap):
    edge_events = {k: [] for k in range(1, 2 * model.genus + 1)}
    for i, route in enumerate(routes):
        for p, side in enumerate(route):
            edge_events[abs(model.sides[side])].append((i, p))
    sizes = 1
    for evs in edge_events.values():
        f = 1
        for n in range(2, len(evs) + 1):
            f *= n
        sizes *= f
        if sizes > cap:
            return None
    perm_lists = [
        list(permutations(edge_events[k]))
        for k in range(1, 2 * model.genus + 1)
    ]
    best_total = best_cross = None
    for assignment in product(*perm_lists):
        total, cross = _count(model, routes, assignment)
        if best_total is None or total < best_total:
            best_total = total
        if best_cross is None or cross < best_cross:
            best_cross = cross
    return best_total, best_cross


def _count(model, routes, slot_orders):
    slot_of = {}
    sizes = {}
    for k, order in enumerate(slot_orders, start=1):
        sizes[k] = len(order)
        for t, ev in enumerate(order):
            slot_of[ev] = (k, t)

    def points(ev):
        side = routes[ev[0]][ev[1]]
        k, t = slot_of[ev]
        m = sizes[k]
        s_plus = model.side_of[k]
        s_minus = model.side_of[-k]
        if side == s_plus:
            return (s_plus, t), (s_minus, m - 1 - t)
        return (s_minus, m - 1 - t), (s_plus, t)

    spans = {}
    allpts = []
    for i, route in enumerate(routes):
        n = len(route)
        for p in range(n):
            _, entry = points((i, p))
            exit_, _ = points((i, (p + 1) % n))
            spans[(i, p)] = (entry, exit_)
            allpts += [entry, exit_]
    order = {pt: n for n, pt in enumerate(sorted(allpts))}
    ids = sorted(spans)
    total = cross = 0
    for n1, c1 in enumerate(ids):
        a1, b1 = sorted((order[spans[c1][0]], order[spans[c1][1]]))
        for c2 in ids[n1 + 1:]:
            a2, b2 = sorted((order[spans[c2][0]], order[spans[c2][1]]))
            if (a1 < a2 < b1) != (a1 < b2 < b1):
                total += 1
                if c1[0] != c2[0]:
                    cross += 1
    return total, cross


def all_classes_up_to(genus, max_len):
    """Canonical classes with representative length <= max_len."""
    surface = make_surface(genus)
    from curvetrace.words import canonical_class
    letters = [l for k in range(1, 2 * genus + 1) for l in (k, -k)]
    seen = set()
    stack = [()]
    out = []
    while stack:
        w = stack.pop()
        if w:
            try:
                c = canonical_class(surface, w)
                if c.word not in seen:
                    seen.add(c.word)
                    out.append(c)
            except Exception:
                pass
        if len(w) < max_len:
            for l in letters:
                if w and l == -w[-1]:
                    continue
                stack.append(w + (l,))
    out.sort(key=lambda c: (len(c.word), c.word))
    return out


def germ_simple(genus, x, y):
    """Simplicity of a two-letter primitive class (x, y) decided at the vertex.

    Both polygon chords of the class hug the vertex, so the class is simple
    exactly when the two corner passages (end germ of one letter to start germ
    of the next) do not strictly interleave in the vertex link.
    """
    model = polygon_model(genus)
    n = model.n_sides
    a, b = model.end_pos[x], model.start_pos[y]
    u, v = model.end_pos[y], model.start_pos[x]
    if {u, v} & {a, b}:
        return True  # shared germ position: perturb to either side
    span = (b - a) % n
    return ((u - a) % n < span) == ((v - a) % n < span)
