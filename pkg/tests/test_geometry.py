"""Taut diagrams and exact intersection numbers on the closed surface."""
import pytest

from oracles import all_classes_up_to, germ_simple, min_crossings
from curvetrace.diagrams import Budget, build_with_slots
from curvetrace.errors import ReductionBudgetExceeded
from curvetrace.curves import (
    enumerate_classes,
    enumerate_simple_classes,
    intersection_number,
    is_simple,
    realize,
    self_intersection,
    tauten,
    tauten_routes,
)
from curvetrace.polygon import polygon_model
from curvetrace.words import canonical_class, format_word, make_surface, parse_word

S2 = make_surface(2)
S3 = make_surface(3)


def C(text, surface=S2):
    return canonical_class(surface, parse_word(surface, text))


def test_realize_single_generator():
    d = realize(S2, C("a1"))
    assert len(d.routes) == 1
    assert len(d.chords[0]) == 1
    assert d.crossing_count == 0


def test_realize_dump_frozen():
    assert realize(S2, C("a1b1")).dump() == "2:0->1:0 1:0->2:0"


def test_self_intersection_frozen_values():
    cases = {
        "a1": 0,
        "a1b1": 0,
        "a1B1": 0,
        "a1b2": 1,
        "a1a1": 1,
        "a1b1A1B1": 0,
        "a1b1a1B1": 1,
        "a1a1b1": 0,
        "a1b1a1b1": 1,
        "a1A2b2": 3,
        "b1b2": 0,
        "a1a2": 0,
    }
    for text, want in cases.items():
        assert self_intersection(S2, C(text)) == want, text


def test_is_simple_requires_primitivity():
    # a1a1 embeds as a diagram only after one crossing; also non-primitive
    assert not is_simple(S2, C("a1a1"))
    assert is_simple(S2, C("a1"))
    assert is_simple(S2, C("a1b1A1B1"))
    assert not is_simple(S2, C("a1b2"))


def test_intersection_number_frozen_values():
    cases = [
        ("a1", "b1", 1),
        ("a1", "a2", 0),
        ("a1", "b2", 0),
        ("a1", "a1", 0),
        ("a1b1", "a1", 1),
        ("a1b1A1B1", "a1", 0),
        ("a1a1", "b1", 2),
        ("a1b1", "b1", 1),
        ("a1b2", "b1", 1),
        ("a1b1A1B1", "a2", 0),
        ("b1b2", "a1", 1),
        ("a1a2", "b2", 1),
    ]
    for x, y, want in cases:
        assert intersection_number(S2, C(x), C(y)) == want, (x, y)


def test_intersection_number_symmetric():
    classes = [C(t) for t in ("a1", "b1", "a2", "a1b1", "a1b2", "a1b1A1B1")]
    for x in classes:
        for y in classes:
            assert intersection_number(S2, x, y) == intersection_number(S2, y, x)


def test_two_letter_classes_match_vertex_germ_oracle():
    # independent simplicity decision at the vertex link for length-2 classes
    letters = [l for k in (1, 2, 3, 4) for l in (k, -k)]
    seen = set()
    for x in letters:
        for y in letters:
            if y in (x, -x):
                continue
            cls = canonical_class(S2, (x, y))
            if cls.word in seen or len(cls.word) != 2:
                continue
            seen.add(cls.word)
            want = germ_simple(2, cls.word[0], cls.word[1])
            assert (self_intersection(S2, cls) == 0) == want, cls.word
    assert len(seen) == 12


def test_self_counts_match_brute_force_sample():
    classes = all_classes_up_to(2, 4)
    assert len(classes) == 386
    for cls in classes[::23]:
        expect = min_crossings(2, (cls.word,))
        assert expect is not None
        assert self_intersection(S2, cls) == expect[0], cls.word


def test_pair_counts_match_brute_force_sample():
    classes = all_classes_up_to(2, 2)
    assert len(classes) == 20
    picked = [
        (classes[i], classes[j])
        for n, (i, j) in enumerate(
            (i, j) for i in range(20) for j in range(i, 20)
        )
        if n % 26 == 0
    ]
    for x, y in picked:
        expect = min_crossings(2, (x.word, y.word))
        assert expect is not None
        assert intersection_number(S2, x, y) == expect[1], (x.word, y.word)


def test_tauten_is_idempotent():
    for text in ("a1b1", "a1b2", "a1A2b2", "a1b1a1B1"):
        d = realize(S2, C(text))
        again = tauten(d)
        assert again.crossing_count == d.crossing_count
        assert tauten(again).crossing_count == d.crossing_count


def test_tauten_removes_artificial_pushoff_crossings():
    # a1 plus a pushoff with a finger poked through the a1 edge and back:
    # two removable crossings, none after tautening
    model = polygon_model(2)
    cls = C("a1")
    routes = ((1,), (1, 0, 2))
    orders = ((((1, 1), (1, 2))), ((0, 0), (1, 0)), (), ())
    d = build_with_slots(model, (cls, cls), routes, orders)
    assert d.crossing_count == 2
    taut = tauten(d)
    assert taut.crossing_count == 0
    assert taut.routes == ((1,), (1,))


def test_pair_diagram_strand_accounting():
    d = tauten_routes(2, (C("a1a1"), C("b1")), ((1, 1), (2,)))
    assert d.strand_self_crossings(0) == 1
    assert d.strand_self_crossings(1) == 0
    assert d.pair_crossings(0, 1) == 2
    assert d.cross_strand_crossings() == 2
    assert d.crossing_count == 3


def test_enumerate_classes_counts():
    counts = {1: 4, 2: 20, 3: 80, 4: 386}
    simple_counts = {1: 4, 2: 12, 3: 32, 4: 83}
    for bound, want in counts.items():
        assert len(enumerate_classes(S2, bound)) == want
    for bound, want in simple_counts.items():
        assert len(enumerate_simple_classes(S2, bound)) == want


def test_enumerate_simple_contents():
    names = [format_word(c.word) for c in enumerate_simple_classes(S2, 1)]
    assert names == ["a1", "b1", "a2", "b2"]
    four = enumerate_simple_classes(S2, 4)
    assert C("a1b1A1B1") in four
    assert all(is_simple(S2, c) for c in four[:10])


def test_genus_three_geometry():
    assert intersection_number(S3, C("a1", S3), C("b1", S3)) == 1
    assert intersection_number(S3, C("a1", S3), C("b3", S3)) == 0
    assert intersection_number(S3, C("a3", S3), C("b3", S3)) == 1
    handle = C("a1b1A1B1a2b2A2B2", S3)
    assert self_intersection(S3, handle) == 0
    assert is_simple(S3, handle)


def test_budget_exhaustion_is_loud():
    with pytest.raises(ReductionBudgetExceeded):
        tauten_routes(
            2,
            (C("a1A2b2"),),
            ((1, 4, 7, 7, 6, 6, 5),),
            budget=Budget(limit=4),
        )
