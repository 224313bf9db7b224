"""Dehn twists, sign characters, and their action on the trace algebra."""
import pytest

from curvetrace.algebra import (
    basis_expression,
    expand_trace,
    evaluate_expression,
    make_multicurve,
    multiply_expressions,
    parse_expression,
    parse_multicurve,
)
from curvetrace.curves import enumerate_simple_classes, intersection_number
from curvetrace.errors import BadIndex, ModelInconsistency, NotSimple, NotSimpleImage
from curvetrace.mapping import (
    MappingClass,
    apply_to_class,
    apply_to_expression,
    apply_to_multicurve,
    apply_to_word,
    central_twist,
    character_pullback,
    compose_mapping_classes,
    format_mapping_class,
    format_sign_character,
    h1_action,
    humphries_classes,
    identity_mapping_class,
    invert_mapping_class,
    make_sign_character,
    parse_mapping_class,
    parse_sign_character,
    semidirect_check,
    sign_pairing,
    twist_along,
    twist_generator,
    verify_algebra_automorphism,
)
from curvetrace.representations import evaluate_trace, random_representation
from curvetrace.words import canonical_class, make_surface, parse_word

S2 = make_surface(2)
S3 = make_surface(3)


def C(text, surface=S2):
    return canonical_class(surface, parse_word(surface, text))


def W(text, surface=S2):
    return parse_word(surface, text)


# -- twist construction --------------------------------------------------------


def test_twist_convention_on_first_handle():
    t = twist_along(S2, C("a1"))
    assert t.images == (W("a1"), W("b1a1"), W("a2"), W("b2"))
    assert t.inverse_images == (W("a1"), W("b1A1"), W("a2"), W("b2"))


def test_twist_images_whole_family():
    got = {}
    for idx in range(1, 6):
        t = twist_generator(S2, idx)
        got[idx] = tuple(t.images)
    assert got[1] == (W("a1"), W("b1"), W("a2B2"), W("b2"))
    assert got[2] == (W("a1B1"), W("b1"), W("a2"), W("b2"))
    assert got[3] == (W("a1"), W("b1a1"), W("a2"), W("b2"))
    assert got[4] == (W("B1B2a1"), W("b1"), W("B2B1a2"), W("b2"))
    assert got[5] == (W("a1"), W("b1"), W("a2"), W("b2a2"))


def test_twist_certificates():
    for surface in (S2, S3):
        for curve in humphries_classes(surface):
            t = twist_along(surface, curve)
            assert t.certificate.sign == 1
            assert len(t.certificate.conjugator) <= 8


def test_twist_homology_shift():
    # twisting along b2 moves a2 by the symplectic pairing, nothing else
    t = twist_generator(S2, 1)
    assert apply_to_word(S2, t, W("a2")) == W("a2B2")
    assert apply_to_word(S2, t, W("b2")) == W("b2")


def test_twist_rejects_bad_input():
    with pytest.raises(NotSimple):
        twist_along(S2, C("a1b2"))
    with pytest.raises(ValueError):
        twist_along(S2, C("a1", S3))


def test_twist_generator_index_errors():
    for bad in (0, 6, -1):
        with pytest.raises(BadIndex):
            twist_generator(S2, bad)
    with pytest.raises(BadIndex):
        twist_generator(S3, 8)


def test_twist_turns():
    c = C("b1b2")
    assert twist_along(S2, c, turns=0) == identity_mapping_class(S2)
    t1 = twist_along(S2, c)
    t2 = twist_along(S2, c, turns=2)
    assert t2.images == compose_mapping_classes(S2, t1, t1).images
    back = twist_along(S2, c, turns=-1)
    assert back.images == t1.inverse_images


def test_humphries_family_genus2():
    assert tuple(c.word for c in humphries_classes(S2)) == (
        (4,), (2,), (1,), (2, 4), (3,),
    )


def test_humphries_family_genus3():
    assert tuple(c.word for c in humphries_classes(S3)) == (
        (4,), (2,), (1,), (2, -5, 4, 5), (3,), (4, -6, -5), (5,),
    )


def test_humphries_intersection_pattern():
    for surface in (S2, S3):
        curves = humphries_classes(surface)
        for i in range(len(curves)):
            for j in range(i + 1, len(curves)):
                want = 1 if (i >= 1 and j == i + 1) or (i == 0 and j == 4) else 0
                assert intersection_number(surface, curves[i], curves[j]) == want


def test_braid_and_commutation_relations():
    curves = humphries_classes(S2)
    twists = [twist_along(S2, c) for c in curves]
    sample = enumerate_simple_classes(S2, 2)

    def images(f):
        return tuple(apply_to_class(S2, f, c) for c in sample)

    for i in range(5):
        for j in range(i + 1, 5):
            ti, tj = twists[i], twists[j]
            if intersection_number(S2, curves[i], curves[j]) == 1:
                lhs = compose_mapping_classes(S2, ti, compose_mapping_classes(S2, tj, ti))
                rhs = compose_mapping_classes(S2, tj, compose_mapping_classes(S2, ti, tj))
            else:
                lhs = compose_mapping_classes(S2, ti, tj)
                rhs = compose_mapping_classes(S2, tj, ti)
            assert images(lhs) == images(rhs)


def test_compose_and_invert():
    t = twist_generator(S2, 4)
    ident = compose_mapping_classes(S2, t, invert_mapping_class(t))
    assert ident.images == identity_mapping_class(S2).images
    double = compose_mapping_classes(S2, t, t)
    assert apply_to_word(S2, double, W("b1")) == apply_to_word(
        S2, t, apply_to_word(S2, t, W("b1"))
    )


# -- action on classes and expressions ------------------------------------------


def test_apply_to_class_ignores_representative():
    t = twist_generator(S2, 3)
    assert apply_to_class(S2, t, C("B1")) == C("b1a1")
    assert apply_to_class(S2, t, C("a2b1A2")) == C("b1a1")


def test_intersection_invariance():
    sample = enumerate_simple_classes(S2, 2)
    t = twist_generator(S2, 4)
    for x in sample:
        fx = apply_to_class(S2, t, x)
        for y in sample:
            fy = apply_to_class(S2, t, y)
            assert intersection_number(S2, fx, fy) == intersection_number(S2, x, y)


def test_apply_to_multicurve():
    t = twist_generator(S2, 3)
    mc = make_multicurve(S2, {C("b1"): 2, C("b2"): 1})
    image = apply_to_multicurve(S2, t, mc)
    assert image == make_multicurve(S2, {C("b1a1"): 2, C("b2"): 1})


def test_apply_to_expression_multiplicative():
    t = twist_generator(S2, 3)
    for u, v in [("a1", "b1"), ("b1", "b2"), ("a1b1", "a2")]:
        f = basis_expression(parse_multicurve(S2, u + "^1"))
        g = basis_expression(parse_multicurve(S2, v + "^1"))
        lhs = apply_to_expression(S2, t, multiply_expressions(S2, f, g))
        rhs = multiply_expressions(
            S2, apply_to_expression(S2, t, f), apply_to_expression(S2, t, g)
        )
        assert lhs == rhs


def test_not_simple_image_error():
    # hand-built broken map: the b1 image is a non-simple class
    fake = MappingClass(
        genus=2,
        images=(W("a1"), W("a1b2"), W("a2"), W("b2")),
        inverse_images=(W("a1"), W("a1b2"), W("a2"), W("b2")),
        certificate=twist_generator(S2, 3).certificate,
    )
    with pytest.raises(NotSimpleImage):
        apply_to_multicurve(S2, fake, make_multicurve(S2, {C("b1"): 1}))


def test_verify_algebra_automorphism_reports():
    t = twist_generator(S2, 3)
    report = verify_algebra_automorphism(S2, t, samples=8, seed=5)
    assert report.ok and report.failures == ()
    assert "twist multiplicativity" in str(report) and "ok" in str(report)
    a = make_sign_character(S2, "1010")
    report = verify_algebra_automorphism(S2, a, samples=8, seed=5)
    assert report.ok
    assert "sign multiplicativity" in str(report)


# -- serialization ---------------------------------------------------------------


def test_mapping_class_round_trip():
    t = twist_generator(S2, 4)
    text = format_mapping_class(t)
    assert parse_mapping_class(S2, text) == t
    lines = text.splitlines()
    assert lines[0] == "a1\tB1B2a1"
    assert lines[4] == ""


def test_parse_mapping_class_errors():
    t = twist_generator(S2, 3)
    text = format_mapping_class(t)
    with pytest.raises(ValueError):
        parse_mapping_class(S2, text.split("\n\n")[0])
    with pytest.raises(ValueError):
        parse_mapping_class(S2, text + "\nb1\tb1")
    broken = text.replace("b1\tb1a1", "b1\tb1a1a1")
    with pytest.raises(ModelInconsistency):
        parse_mapping_class(S2, broken)


# -- sign characters -------------------------------------------------------------


def test_sign_character_parse_format():
    a = parse_sign_character(S2, "0110")
    assert a.bits == (0, 1, 1, 0)
    assert format_sign_character(a) == "0110"
    assert make_sign_character(S2, (1, 0, 0, 1)).bits == (1, 0, 0, 1)
    for bad in ("011", "01102", "01x0"):
        with pytest.raises(ValueError):
            parse_sign_character(S2, bad)


def test_sign_pairing_values():
    a = make_sign_character(S2, "1000")
    assert sign_pairing(S2, a, parse_multicurve(S2, "a1^1")) == 1
    assert sign_pairing(S2, a, parse_multicurve(S2, "b1^1")) == 0
    assert sign_pairing(S2, a, parse_multicurve(S2, "a1^2")) == 0
    assert sign_pairing(S2, a, parse_multicurve(S2, "a1^1,b2^1")) == 1
    # null-homologous class pairs trivially with everything
    assert sign_pairing(S2, make_sign_character(S2, "1111"),
                        parse_multicurve(S2, "a1b1A1B1^1")) == 0


def test_h1_action_flips_coefficients():
    a = make_sign_character(S2, "1000")
    f = parse_expression(S2, "2\ta1^1\n5\tb1^1\n1\t-")
    assert h1_action(S2, a, f) == parse_expression(S2, "-2\ta1^1\n5\tb1^1\n1\t-")


def test_h1_action_involution_and_multiplicative():
    f = expand_trace(S2, W("a1b1"))
    g = expand_trace(S2, W("b1b2"))
    for bits in ("1000", "0101", "1111"):
        a = make_sign_character(S2, bits)
        assert h1_action(S2, a, h1_action(S2, a, f)) == f
        lhs = h1_action(S2, a, multiply_expressions(S2, f, g))
        rhs = multiply_expressions(S2, h1_action(S2, a, f), h1_action(S2, a, g))
        assert lhs == rhs


def test_central_twist_traces():
    rep = random_representation(S2, 7)
    a = make_sign_character(S2, "0110")
    twisted = central_twist(S2, rep, a)
    assert twisted.relator_residual < 1e-9
    for text in ("a1", "b1", "a1b1", "a2b2A2B2", "b1a2"):
        word = W(text)
        e = expand_trace(S2, word)
        lhs = evaluate_expression(twisted, e)
        rhs = evaluate_expression(rep, h1_action(S2, a, e))
        assert abs(lhs - rhs) < 1e-8
        direct = evaluate_trace(twisted, word)
        assert abs(direct - lhs) < 1e-6


def test_character_pullback():
    t = twist_generator(S2, 3)
    assert format_sign_character(
        character_pullback(S2, make_sign_character(S2, "1000"), t)
    ) == "1100"
    assert format_sign_character(
        character_pullback(S2, make_sign_character(S2, "0100"), t)
    ) == "0100"


def test_semidirect_relation():
    for idx, bits in [(1, "1000"), (3, "0100"), (4, "1011")]:
        report = semidirect_check(
            S2, twist_generator(S2, idx), make_sign_character(S2, bits), bound=2
        )
        assert report.ok, str(report)
        assert "semidirect relation" in str(report)


def test_genus3_twists_exist():
    t = twist_generator(S3, 6)
    assert apply_to_word(S3, t, W("a1", S3)) == W("a1", S3)
    assert t.certificate.sign == 1
