"""Numerical representation sampling and the defining trace identities."""
import random

import numpy as np

from curvetrace.representations import (
    evaluate_trace,
    random_representation,
    relator_residual,
    trivial_representation,
)
from curvetrace.words import inverse_word, make_surface

S2 = make_surface(2)
S3 = make_surface(3)


def test_residual_and_determinants():
    for seed in range(5):
        rep = random_representation(S2, seed)
        assert rep.relator_residual <= 1e-9
        assert relator_residual(S2, rep.matrices) <= 1e-9
        for m in rep.matrices:
            assert abs(np.linalg.det(m) - 1.0) <= 1e-11


def test_genus_three_sampling():
    rep = random_representation(S3, 11)
    assert len(rep.matrices) == 6
    assert rep.relator_residual <= 1e-9


def test_determinism():
    a = random_representation(S2, 42)
    b = random_representation(S2, 42)
    for ma, mb in zip(a.matrices, b.matrices):
        assert np.array_equal(ma, mb)


def test_identity_trace_is_exactly_two():
    rep = random_representation(S2, 0)
    assert evaluate_trace(rep, ()) == 2.0
    assert abs(evaluate_trace(rep, S2.relator) - 2.0) <= 1e-9


def test_trivial_representation():
    rep = trivial_representation(S2)
    assert rep.relator_residual == 0.0
    assert evaluate_trace(rep, (1, 2, -1)) == 2.0


def test_fundamental_trace_identity():
    # Tr(U)Tr(V) = Tr(UV) + Tr(UV^-1) for any U, V in SL2
    rng = random.Random(5)
    letters = [1, -1, 2, -2, 3, -3, 4, -4]
    reps = [random_representation(S2, seed) for seed in (1, 2, 3)]
    for _ in range(20):
        u = tuple(rng.choice(letters) for _ in range(rng.randrange(0, 6)))
        v = tuple(rng.choice(letters) for _ in range(rng.randrange(0, 6)))
        for rep in reps:
            lhs = evaluate_trace(rep, u) * evaluate_trace(rep, v)
            rhs = evaluate_trace(rep, u + v) + evaluate_trace(
                rep, u + inverse_word(v)
            )
            assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(lhs))


def test_trace_is_a_class_function():
    rng = random.Random(9)
    letters = [1, -1, 2, -2, 3, -3, 4, -4]
    rep = random_representation(S2, 8)
    for _ in range(20):
        w = tuple(rng.choice(letters) for _ in range(rng.randrange(1, 6)))
        c = tuple(rng.choice(letters) for _ in range(rng.randrange(1, 5)))
        lhs = evaluate_trace(rep, w)
        rhs = evaluate_trace(rep, c + w + inverse_word(c))
        assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(lhs))
        assert abs(lhs - evaluate_trace(rep, inverse_word(w))) <= 1e-8 * max(
            1.0, abs(lhs)
        )
