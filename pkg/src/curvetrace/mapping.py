"""Mapping classes and sign characters acting on the trace algebra.

Dehn twists are built on the one-vertex polygon model.  Each generator loop,
pushed off the vertex, becomes a rotation to its side's start corner, a slide
along the side, and a rotation back.  Twisting along a taut simple curve
inserts the curve's based loop word wherever the slide crosses a strand, with
the insertion direction set by the crossing side.  Images are stored in
normalized form and every constructor certifies itself: the relator's image
must cyclically reduce, in the free group, to a rotation of the relator or
its inverse, and the stored inverse must compose back to the identity.

Sign characters flip basis coefficients by the mod-2 pairing with the class
of the multicurve; together with mapping classes they generate the symmetry
group checked by semidirect_check.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    Multicurve,
    TraceExpression,
    _from_terms,
    _multicurve,
    basis_expression,
    enumerate_multicurves,
    multiply_expressions,
)
from .curves import _taut_single, enumerate_classes, intersection_number, is_simple
from .diagrams import build_diagram
from .errors import BadIndex, ModelInconsistency, NotSimple, NotSimpleImage
from .polygon import polygon_model
from .representations import Representation, relator_residual
from .words import (
    CurveClass,
    GroupWord,
    Surface,
    canonical_class,
    cyclic_free_reduce,
    format_word,
    free_reduce,
    generator_name,
    homology_class,
    inverse_word,
    normalize_word,
    parse_word,
    rotations,
)

TWIST_CONJUGATOR_CAP = 8

# connector words completing the twist-generator chain, found by the
# intersection-pattern search below and frozen after verification
_CONNECTOR_SEEDS = {
    2: ((2, 4),),
    3: ((2, -5, 4, 5), (4, -6, -5)),
}


# -- mapping classes ----------------------------------------------------------


@dataclass(frozen=True)
class RelatorCertificate:
    """Witness that a substitution respects the surface relation.

    The image of the relator, freely and then cyclically reduced, is a
    rotation of the relator (sign +1) or of its inverse (sign -1); conjugator
    is the prefix stripped by the cyclic reduction.
    """

    sign: int
    conjugator: GroupWord

    def __str__(self) -> str:
        return f"relator image: sign={self.sign:+d} conjugator={len(self.conjugator)}"


@dataclass(frozen=True)
class MappingClass:
    """Surface-group automorphism given by generator images.

    images[k-1] and inverse_images[k-1] hold normalized words for the image
    of generator k under the map and its inverse.
    """

    genus: int
    images: tuple
    inverse_images: tuple
    certificate: RelatorCertificate

    def __str__(self) -> str:
        parts = ", ".join(
            f"{generator_name(k + 1)}->{format_word(w)}"
            for k, w in enumerate(self.images)
        )
        return f"[{parts}]"


def _substitute(images, word) -> GroupWord:
    parts = []
    for letter in word:
        if letter > 0:
            parts.extend(images[letter - 1])
        else:
            parts.extend(inverse_word(images[-letter - 1]))
    return free_reduce(parts)


def relator_certificate(s: Surface, images) -> RelatorCertificate:
    """Certify that the substitution maps the relator to a conjugate of a
    rotation of itself or its inverse in the free group."""
    image = _substitute(images, s.relator)
    core = cyclic_free_reduce(image)
    half = (len(image) - len(core)) // 2
    conjugator = image[:half]
    if core in set(rotations(s.relator)):
        return RelatorCertificate(sign=1, conjugator=conjugator)
    if core in set(rotations(inverse_word(s.relator))):
        return RelatorCertificate(sign=-1, conjugator=conjugator)
    raise ModelInconsistency(
        "relator image does not cyclically reduce to a rotation of the"
        " relator or its inverse"
    )


def _checked(s: Surface, images, inverse_images) -> MappingClass:
    cert = relator_certificate(s, images)
    relator_certificate(s, inverse_images)
    for k in range(1, s.rank + 1):
        round_trip = _substitute(inverse_images, _substitute(images, (k,)))
        if normalize_word(s, round_trip) != (k,):
            raise ModelInconsistency(
                f"stored inverse does not undo the map on {generator_name(k)}"
            )
    return MappingClass(
        genus=s.genus,
        images=tuple(images),
        inverse_images=tuple(inverse_images),
        certificate=cert,
    )


def identity_mapping_class(s: Surface) -> MappingClass:
    gens = tuple((k,) for k in range(1, s.rank + 1))
    return _checked(s, gens, gens)


def compose_mapping_classes(s: Surface, f: MappingClass, g: MappingClass) -> MappingClass:
    """Mapping class acting as f after g."""
    raw = tuple(_substitute(f.images, w) for w in g.images)
    raw_inv = tuple(_substitute(g.inverse_images, w) for w in f.inverse_images)
    images = tuple(normalize_word(s, w) for w in raw)
    inverse_images = tuple(normalize_word(s, w) for w in raw_inv)
    cert = relator_certificate(s, raw)
    relator_certificate(s, raw_inv)
    for k in range(1, s.rank + 1):
        if normalize_word(s, _substitute(inverse_images, images[k - 1])) != (k,):
            raise ModelInconsistency("composition lost invertibility")
    return MappingClass(
        genus=s.genus,
        images=images,
        inverse_images=inverse_images,
        certificate=cert,
    )


def invert_mapping_class(f: MappingClass) -> MappingClass:
    s = _surface(f.genus)
    return _checked(s, f.inverse_images, f.images)


@lru_cache(maxsize=None)
def _surface(genus: int) -> Surface:
    from .words import make_surface

    return make_surface(genus)


# -- Dehn twists --------------------------------------------------------------


@lru_cache(maxsize=None)
def _rotation_prefixes(genus: int) -> tuple:
    """prefixes[j]: word read rotating from the base corner sector past the
    first j side germs of the vertex walk."""
    model = polygon_model(genus)
    out = [()]
    for t in range(model.n_sides):
        out.append(free_reduce(out[-1] + model.sigma[model.orbit[t]]))
    return tuple(out)


def _twist_words(s: Surface, cls: CurveClass, turns: int) -> tuple:
    """Raw generator images of the twist along cls, with the given number of
    turns (sign = handedness)."""
    model = polygon_model(s.genus)
    route, crossings = _taut_single(s.genus, cls.word)
    if crossings:
        raise NotSimple(f"cannot twist along {format_word(cls.word)}")
    diagram = build_diagram(model, (cls,), (route,))
    prefixes = _rotation_prefixes(s.genus)
    n = len(route)
    images = []
    for k in range(1, s.rank + 1):
        word = list(prefixes[model.start_pos[k]])
        for _, p in diagram.slot_orders[k - 1]:
            # slide crossings in slot order; an exiting strand is read from
            # just before its edge event, an entering one from just after,
            # and the two directions insert opposite powers
            if route[p] == model.side_of[k]:
                loop = model.route_word(route, p)
                power = turns
            elif route[p] == model.side_of[-k]:
                loop = model.route_word(route, (p + 1) % n)
                power = -turns
            else:
                raise ModelInconsistency("slide crossing off its own edge")
            if power >= 0:
                word.extend(loop * power)
            else:
                word.extend(inverse_word(loop) * (-power))
        word.extend(inverse_word(prefixes[model.end_pos[k]]))
        images.append(free_reduce(word))
    return tuple(images)


def _symplectic(genus: int, u, v) -> int:
    return sum(
        u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i] for i in range(genus)
    )


def _twist_homology_check(s: Surface, cls: CurveClass, turns: int, images):
    model = polygon_model(s.genus)
    route, _ = _taut_single(s.genus, cls.word)
    curve = homology_class(s, model.route_word(route, 0)).coords
    for k in range(1, s.rank + 1):
        before = homology_class(s, (k,)).coords
        after = homology_class(s, images[k - 1]).coords
        shift = turns * _symplectic(s.genus, curve, before)
        want = tuple(x + shift * c for x, c in zip(before, curve))
        if after != want:
            raise ModelInconsistency(
                f"twist image of {generator_name(k)} has homology {after},"
                f" expected {want}"
            )


@lru_cache(maxsize=None)
def _twist_cached(genus: int, word, turns: int) -> MappingClass:
    s = _surface(genus)
    cls = CurveClass(genus, word)
    raw = _twist_words(s, cls, turns)
    raw_inverse = _twist_words(s, cls, -turns)
    _twist_homology_check(s, cls, turns, raw)
    images = tuple(normalize_word(s, w) for w in raw)
    inverse_images = tuple(normalize_word(s, w) for w in raw_inverse)
    out = _checked(s, images, inverse_images)
    if len(out.certificate.conjugator) > TWIST_CONJUGATOR_CAP:
        raise ModelInconsistency(
            f"twist certificate conjugator exceeds {TWIST_CONJUGATOR_CAP}"
        )
    return out


def twist_along(s: Surface, cls: CurveClass, turns: int = 1) -> MappingClass:
    """Dehn twist along a simple class; turns < 0 gives the opposite twist.

    One positive turn along the first handle's meridian sends b1 to b1a1
    and fixes the other generators.
    """
    if cls.genus != s.genus:
        raise ValueError("class and surface genus differ")
    if not is_simple(s, cls):
        raise NotSimple(f"cannot twist along {format_word(cls.word)}")
    if turns == 0:
        return identity_mapping_class(s)
    return _twist_cached(s.genus, cls.word, turns)


# -- twist generators (Humphries family) --------------------------------------


def _mod2_pairing(genus: int, u, v) -> int:
    return (
        sum(u[2 * i] * v[2 * i + 1] + u[2 * i + 1] * v[2 * i] for i in range(genus))
        % 2
    )


def _chain_pattern_ok(s: Surface, curves) -> bool:
    """Off-curve meets exactly the 4th chain curve once; consecutive chain
    curves meet once; all other pairs are disjoint."""
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            adjacent = i >= 1 and j == i + 1
            off_meets = i == 0 and j == 4
            want = 1 if (adjacent or off_meets) else 0
            if intersection_number(s, curves[i], curves[j]) != want:
                return False
    return True


def _connector_search(s: Surface, chain, off, a_next):
    """First simple class (canonical order, length <= 5) meeting the chain
    end and the next meridian once while avoiding everything else placed."""
    genus = s.genus
    placed = [off] + chain
    others = placed[:-1]
    want_one = (chain[-1], a_next)

    def mod2(c):
        return homology_class(s, c.word, ring="Z2").coords

    targets = {c: mod2(c) for c in placed + [a_next]}
    for cand in enumerate_classes(s, 5):
        v = mod2(cand)
        if not any(v):
            continue
        if any(_mod2_pairing(genus, v, targets[c]) != 1 for c in want_one):
            continue
        if any(_mod2_pairing(genus, v, targets[c]) != 0 for c in others):
            continue
        if not is_simple(s, cand):
            continue
        if any(intersection_number(s, cand, c) != 1 for c in want_one):
            continue
        if any(intersection_number(s, cand, c) != 0 for c in others):
            continue
        yield cand


def _complete_chain(s: Surface, chain, off, stage) -> bool:
    genus = s.genus
    if stage == genus:
        return True
    a_next = canonical_class(s, (2 * stage + 1,))
    for cand in _connector_search(s, chain, off, a_next):
        chain.append(cand)
        chain.append(a_next)
        if _complete_chain(s, chain, off, stage + 1):
            return True
        chain.pop()
        chain.pop()
    return False


@lru_cache(maxsize=None)
def _humphries(genus: int) -> tuple:
    s = _surface(genus)
    off = canonical_class(s, (4,))
    chain = [canonical_class(s, (2,)), canonical_class(s, (1,))]
    seeds = _CONNECTOR_SEEDS.get(genus)
    if seeds is not None:
        seeded = list(chain)
        for i, word in enumerate(seeds):
            seeded.append(canonical_class(s, word))
            seeded.append(canonical_class(s, (2 * i + 3,)))
        if _chain_pattern_ok(s, [off] + seeded):
            return tuple([off] + seeded)
    if not _complete_chain(s, chain, off, 1):
        raise ModelInconsistency(
            f"no twist-generator chain completes at genus {genus}"
        )
    curves = [off] + chain
    if not _chain_pattern_ok(s, curves):
        raise ModelInconsistency("twist-generator chain fails its own pattern")
    return tuple(curves)


def humphries_classes(s: Surface) -> tuple:
    """The 2g+1 twist-generator curves: one off-chain curve, then a chain
    alternating meridians and connectors, pairwise meeting at most once."""
    return _humphries(s.genus)


def twist_generator(s: Surface, index: int) -> MappingClass:
    """Dehn twist along the index-th twist-generator curve (1-based)."""
    curves = humphries_classes(s)
    if not isinstance(index, int) or not 1 <= index <= len(curves):
        raise BadIndex(
            f"twist generator index {index!r} outside 1..{len(curves)}"
        )
    return twist_along(s, curves[index - 1])


# -- action on words, classes, expressions ------------------------------------


def apply_to_word(s: Surface, f: MappingClass, word) -> GroupWord:
    return normalize_word(s, _substitute(f.images, tuple(word)))


def apply_to_class(s: Surface, f: MappingClass, cls: CurveClass) -> CurveClass:
    return canonical_class(s, _substitute(f.images, cls.word))


def apply_to_multicurve(s: Surface, f: MappingClass, mc: Multicurve) -> Multicurve:
    counts = {}
    for cls, mult in mc.components:
        image = apply_to_class(s, f, cls)
        if not is_simple(s, image):
            raise NotSimpleImage(
                f"image {format_word(image.word)} of component"
                f" {format_word(cls.word)} is not simple"
            )
        counts[image] = counts.get(image, 0) + mult
    pieces = sorted(counts, key=lambda c: (len(c.word), c.word))
    for i, x in enumerate(pieces):
        for y in pieces[i + 1 :]:
            if intersection_number(s, x, y) != 0:
                raise NotSimpleImage(
                    f"components {format_word(x.word)} and {format_word(y.word)}"
                    " cross after mapping"
                )
    return _multicurve(s.genus, counts)


def apply_to_expression(
    s: Surface, f: MappingClass, expr: TraceExpression
) -> TraceExpression:
    acc = {}
    for mc, coeff in expr.terms:
        image = apply_to_multicurve(s, f, mc)
        acc[image] = acc.get(image, 0) + coeff
    return _from_terms(s.genus, acc)


# -- serialization ------------------------------------------------------------


def format_mapping_class(f: MappingClass) -> str:
    """Two generator<TAB>imageWord blocks (map, then inverse) separated by a
    blank line."""
    fwd = "\n".join(
        f"{generator_name(k + 1)}\t{format_word(w)}" for k, w in enumerate(f.images)
    )
    bwd = "\n".join(
        f"{generator_name(k + 1)}\t{format_word(w)}"
        for k, w in enumerate(f.inverse_images)
    )
    return fwd + "\n\n" + bwd


def _parse_block(s: Surface, lines) -> tuple:
    images = [None] * s.rank
    for line in lines:
        name, _, word_text = line.partition("\t")
        if not word_text:
            name, _, word_text = line.partition(" ")
        target = parse_word(s, name.strip())
        if len(target) != 1 or target[0] < 0:
            raise ValueError(f"line {line!r} does not start with a generator")
        word = parse_word(s, word_text.strip())
        k = target[0]
        if images[k - 1] is not None:
            raise ValueError(f"duplicate image for {generator_name(k)}")
        images[k - 1] = normalize_word(s, word)
    missing = [generator_name(k + 1) for k, w in enumerate(images) if w is None]
    if missing:
        raise ValueError(f"missing image lines for {', '.join(missing)}")
    return tuple(images)


def parse_mapping_class(s: Surface, text: str) -> MappingClass:
    """Parse and re-certify the two-block format of format_mapping_class."""
    blocks, current = [], []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("#"):
            continue
        if not line:
            if current:
                blocks.append(current)
                current = []
            continue
        current.append(line)
    if current:
        blocks.append(current)
    if len(blocks) != 2:
        raise ValueError(
            "mapping class text needs an image block and an inverse block"
        )
    images = _parse_block(s, blocks[0])
    inverse_images = _parse_block(s, blocks[1])
    return _checked(s, images, inverse_images)


# -- sign characters ----------------------------------------------------------


@dataclass(frozen=True)
class SignCharacter:
    """Mod-2 cohomology class, one bit per generator in a1 b1 a2 b2 order."""

    genus: int
    bits: tuple

    def __str__(self) -> str:
        return format_sign_character(self)


def make_sign_character(s: Surface, bits) -> SignCharacter:
    if isinstance(bits, str):
        bits = bits.strip()
        if not all(ch in "01" for ch in bits):
            raise ValueError(f"sign character {bits!r} must be 0/1 only")
        values = tuple(int(ch) for ch in bits)
    else:
        values = tuple(int(b) for b in bits)
        if not all(b in (0, 1) for b in values):
            raise ValueError("sign character bits must be 0 or 1")
    if len(values) != s.rank:
        raise ValueError(
            f"sign character needs {s.rank} bits, got {len(values)}"
        )
    return SignCharacter(genus=s.genus, bits=values)


def format_sign_character(a: SignCharacter) -> str:
    return "".join(str(b) for b in a.bits)


def parse_sign_character(s: Surface, text: str) -> SignCharacter:
    return make_sign_character(s, text.strip())


def sign_pairing(s: Surface, a: SignCharacter, mc: Multicurve) -> int:
    """Evaluation of the character on the mod-2 class of the multicurve."""
    total = [0] * s.rank
    for cls, mult in mc.components:
        if mult % 2 == 0:
            continue
        for i, c in enumerate(homology_class(s, cls.word, ring="Z2").coords):
            total[i] = (total[i] + c) % 2
    return sum(b * v for b, v in zip(a.bits, total)) % 2


def h1_action(s: Surface, a: SignCharacter, expr: TraceExpression) -> TraceExpression:
    """Flip each basis coefficient by the character's pairing with the class."""
    acc = {}
    for mc, coeff in expr.terms:
        acc[mc] = -coeff if sign_pairing(s, a, mc) else coeff
    return _from_terms(s.genus, acc)


def central_twist(s: Surface, rep: Representation, a: SignCharacter) -> Representation:
    """Representation with each generator matrix flipped by the character."""
    matrices = tuple(
        -m if bit else m for m, bit in zip(rep.matrices, a.bits)
    )
    return Representation(
        genus=rep.genus,
        matrices=matrices,
        relator_residual=relator_residual(s, matrices),
    )


# -- automorphism and semidirect checks ---------------------------------------


@dataclass(frozen=True)
class AutomorphismReport:
    kind: str
    samples: int
    seed: int
    bound: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self) -> str:
        state = "ok" if self.ok else f"{len(self.failures)} FAILED"
        return (
            f"{self.kind} multiplicativity: samples={self.samples}"
            f" bound={self.bound} seed={self.seed} {state}"
        )


def _action_on_expression(s: Surface, action):
    if isinstance(action, MappingClass):
        return "twist", lambda e: apply_to_expression(s, action, e)
    if isinstance(action, SignCharacter):
        return "sign", lambda e: h1_action(s, action, e)
    raise TypeError(f"unsupported action {type(action).__name__}")


def verify_algebra_automorphism(
    s: Surface, action, samples: int = 25, seed: int = 0, bound: int = 2
) -> AutomorphismReport:
    """Check the action against products of randomly sampled basis pairs."""
    kind, act = _action_on_expression(s, action)
    universe = enumerate_multicurves(s, bound)
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        left = rng.choice(universe)
        right = rng.choice(universe)
        product = multiply_expressions(
            s, basis_expression(left), basis_expression(right)
        )
        lhs = act(product)
        rhs = multiply_expressions(
            s, act(basis_expression(left)), act(basis_expression(right))
        )
        if lhs != rhs:
            failures.append((left, right))
    return AutomorphismReport(
        kind=kind,
        samples=samples,
        seed=seed,
        bound=bound,
        failures=tuple(failures),
    )


def character_pullback(s: Surface, a: SignCharacter, f: MappingClass) -> SignCharacter:
    """The character evaluating on x as a does on the inverse image of x."""
    bits = []
    for k in range(1, s.rank + 1):
        coords = homology_class(s, f.inverse_images[k - 1], ring="Z2").coords
        bits.append(sum(b * c for b, c in zip(a.bits, coords)) % 2)
    return SignCharacter(genus=s.genus, bits=tuple(bits))


@dataclass(frozen=True)
class SemidirectReport:
    bound: int
    checked: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self) -> str:
        state = "ok" if self.ok else f"{len(self.failures)} FAILED"
        return f"semidirect relation: basis={self.checked} bound={self.bound} {state}"


def semidirect_check(
    s: Surface, f: MappingClass, a: SignCharacter, bound: int = 2
) -> SemidirectReport:
    """Conjugating the character's action by the mapping class equals the
    action of the character pulled back along the inverse map."""
    inverse = invert_mapping_class(f)
    pulled = character_pullback(s, a, f)
    failures = []
    universe = enumerate_multicurves(s, bound)
    for mc in universe:
        start = basis_expression(mc)
        lhs = apply_to_expression(
            s, f, h1_action(s, a, apply_to_expression(s, inverse, start))
        )
        rhs = h1_action(s, pulled, start)
        if lhs != rhs:
            failures.append(mc)
    return SemidirectReport(
        bound=bound, checked=len(universe), failures=tuple(failures)
    )
