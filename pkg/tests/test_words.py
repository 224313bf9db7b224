"""Word handling on the surface group: reduction, conjugacy classes, homology."""
import random

import pytest

from curvetrace.errors import BadLetter, GenusTooSmall, TrivialClass
from curvetrace.words import (
    canonical_class,
    format_word,
    free_reduce,
    geodesic_spellings,
    homology_class,
    inverse_word,
    is_primitive,
    make_surface,
    normalize_word,
    parse_word,
    primitive_root,
    rotations,
    words_equal,
)

S2 = make_surface(2)
S3 = make_surface(3)


def W(text, surface=S2):
    return parse_word(surface, text)


def test_surface_construction():
    assert S2.genus == 2
    assert S2.rank == 4
    assert S2.relator == (1, 2, -1, -2, 3, 4, -3, -4)
    assert S3.relator == (1, 2, -1, -2, 3, 4, -3, -4, 5, 6, -5, -6)
    with pytest.raises(GenusTooSmall):
        make_surface(1)
    with pytest.raises(GenusTooSmall):
        make_surface(0)


def test_parse_format_round_trip():
    for text in ("a1", "a1b1A1B1", "B2a2", "a1a1a1", "b2A1b2"):
        word = W(text)
        assert format_word(word) == text
        assert parse_word(S2, format_word(word)) == word
    assert W("") == ()
    assert format_word(()) == "-"


def test_parse_rejects_bad_letters():
    for text in ("c1", "a0", "a3", "b5", "a", "1a", "a1x"):
        with pytest.raises(BadLetter):
            parse_word(S2, text)
    # a3 is fine at genus 3
    assert parse_word(S3, "a3") == (5,)


def test_free_reduce():
    assert free_reduce((1, -1)) == ()
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert free_reduce((1, 2, 3)) == (1, 2, 3)
    assert free_reduce(()) == ()


def test_inverse_word():
    assert inverse_word((1, 2, -3)) == (3, -2, -1)
    assert free_reduce(W("a1b1") + inverse_word(W("a1b1"))) == ()


def test_normalize_kills_relator():
    assert normalize_word(S2, S2.relator) == ()
    assert normalize_word(S2, inverse_word(S2.relator)) == ()
    assert normalize_word(S2, W("a1A1")) == ()
    assert normalize_word(S2, ()) == ()


def test_normalize_relator_times_generator():
    assert normalize_word(S2, S2.relator + (1,)) == (1,)
    assert normalize_word(S3, S3.relator + (-5,)) == (-5,)


def test_normalize_is_geodesic_after_relator_insertion():
    # inserting a relator conjugate never changes the element
    rng = random.Random(20260825)
    rots = list(rotations(S2.relator)) + list(rotations(inverse_word(S2.relator)))
    for _ in range(300):
        word = tuple(
            rng.choice([1, -1, 2, -2, 3, -3, 4, -4])
            for _ in range(rng.randrange(0, 9))
        )
        base = normalize_word(S2, word)
        cut = rng.randrange(0, len(word) + 1)
        noisy = word[:cut] + rng.choice(rots) + word[cut:]
        assert normalize_word(S2, noisy) == base
        assert len(base) <= len(word)
        assert words_equal(S2, word, noisy)


def test_geodesic_spellings_of_half_relator():
    # exactly one half-relator swap is available for a half-length word
    half = W("a1b1A1B1")
    other = inverse_word(W("a2b2A2B2"))
    spellings = set(geodesic_spellings(2, half))
    assert spellings == {half, other}


def test_canonical_class_frozen_forms():
    cases = {
        "a1b1A1B1": "a1b1A1B1",
        "b1a1": "a1b1",
        "A1": "a1",
        "a1a1": "a1a1",
        "B2A2b2a2": "a1b1A1B1",
        "b1a1B1": "a1",
        "a2": "a2",
    }
    for text, want in cases.items():
        assert format_word(canonical_class(S2, W(text)).word) == want


def test_canonical_class_invariances():
    rng = random.Random(1729)
    letters = [1, -1, 2, -2, 3, -3, 4, -4]
    for _ in range(200):
        word = tuple(rng.choice(letters) for _ in range(rng.randrange(1, 7)))
        try:
            base = canonical_class(S2, word)
        except TrivialClass:
            continue
        conj = tuple(rng.choice(letters) for _ in range(rng.randrange(0, 5)))
        assert canonical_class(S2, conj + word + inverse_word(conj)) == base
        assert canonical_class(S2, inverse_word(word)) == base
        k = rng.randrange(len(word))
        assert canonical_class(S2, word[k:] + word[:k]) == base


def test_canonical_class_rejects_trivial():
    with pytest.raises(TrivialClass):
        canonical_class(S2, ())
    with pytest.raises(TrivialClass):
        canonical_class(S2, S2.relator)
    with pytest.raises(TrivialClass):
        canonical_class(S2, (1, 2, -2, -1))


def test_homology_frozen_values():
    assert homology_class(S2, W("a1")).coords == (1, 0, 0, 0)
    assert homology_class(S2, W("b2")).coords == (0, 0, 0, 1)
    assert homology_class(S2, W("a1b1A1B1")).coords == (0, 0, 0, 0)
    assert homology_class(S2, W("a1a1")).coords == (2, 0, 0, 0)
    assert homology_class(S2, W("a1a1"), ring="Z2").coords == (0, 0, 0, 0)
    assert homology_class(S2, W("a1A2"), ring="Z2").coords == (1, 0, 1, 0)


def test_homology_additive_and_relator_trivial():
    rng = random.Random(7)
    letters = [1, -1, 2, -2, 3, -3, 4, -4]
    assert homology_class(S2, S2.relator).coords == (0, 0, 0, 0)
    for _ in range(50):
        u = tuple(rng.choice(letters) for _ in range(rng.randrange(0, 6)))
        v = tuple(rng.choice(letters) for _ in range(rng.randrange(0, 6)))
        hu = homology_class(S2, u).coords
        hv = homology_class(S2, v).coords
        huv = homology_class(S2, u + v).coords
        assert huv == tuple(a + b for a, b in zip(hu, hv))
        m2 = homology_class(S2, u + v, ring="Z2").coords
        assert m2 == tuple((a + b) % 2 for a, b in zip(hu, hv))


def test_primitive_root():
    cases = {
        "a1a1": ("a1", 2),
        "a1b1a1b1": ("a1b1", 2),
        "a1b1A1B1": ("a1b1A1B1", 1),
        "a1": ("a1", 1),
    }
    for text, (root, k) in cases.items():
        cls = canonical_class(S2, W(text))
        got_root, got_k = primitive_root(S2, cls)
        assert (format_word(got_root.word), got_k) == (root, k)
        assert is_primitive(S2, cls) == (k == 1)


def test_genus_three_words():
    w = parse_word(S3, "a1b1A1B1a2b2A2B2")
    cls = canonical_class(S3, w)
    # conjugate to the inverse of the last commutator, which is shorter
    assert cls.word == (5, 6, -5, -6)
    assert normalize_word(S3, S3.relator) == ()
    assert homology_class(S3, w).coords == (0,) * 6
