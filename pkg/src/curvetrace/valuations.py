"""Valuations on the character algebra from rational weighted multicurves.

A lamination here is a finite set of disjoint simple classes with positive
rational weights.  It pairs with any class through the geometric intersection
number, weighted and summed; the valuation of an expression is the largest
pairing over its basis terms, and the zero expression takes the bottom value.
Discreteness, positivity and strictness are decided or checked against
explicitly bounded curve universes, and every report says which bound it used.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .algebra import (
    Multicurve,
    TraceExpression,
    enumerate_multicurves,
    expand_trace,
    make_multicurve,
    multiply_expressions,
    format_multicurve,
)
from .curves import enumerate_simple_classes, intersection_number, is_simple
from .errors import NotSimple
from .words import (
    CurveClass,
    Surface,
    canonical_class,
    format_word,
    homology_class,
    normalize_word,
    parse_word,
)

WITNESS_LENGTH_BOUND = 4


@dataclass(frozen=True)
class Lamination:
    """Disjoint simple classes with positive rational weights."""

    genus: int
    weights: tuple  # ((CurveClass, Fraction), ...) in component order

    def weight(self, cls: CurveClass) -> Fraction:
        for c, w in self.weights:
            if c == cls:
                return w
        return Fraction(0)

    def __str__(self) -> str:
        return format_lamination(self)


def make_lamination(s: Surface, weights) -> Lamination:
    """Validated constructor: positive weights, simple disjoint components."""
    acc = {}
    for cls, w in dict(weights).items():
        w = Fraction(w)
        if w <= 0:
            raise ValueError(f"weight {w} of {format_word(cls.word)} not positive")
        if not is_simple(s, cls):
            raise NotSimple(f"{format_word(cls.word)} is not a simple class")
        acc[cls] = acc.get(cls, Fraction(0)) + w
    classes = sorted(acc, key=lambda c: (len(c.word), c.word))
    for i, x in enumerate(classes):
        for y in classes[i + 1 :]:
            n = intersection_number(s, x, y)
            if n != 0:
                raise NotSimple(
                    f"components {format_word(x.word)} and {format_word(y.word)}"
                    f" cross {n} times"
                )
    items = tuple((c, acc[c]) for c in classes)
    return Lamination(genus=s.genus, weights=items)


def scale_lamination(lam: Lamination, factor) -> Lamination:
    factor = Fraction(factor)
    if factor <= 0:
        raise ValueError(f"scale factor {factor} not positive")
    return Lamination(
        genus=lam.genus, weights=tuple((c, w * factor) for c, w in lam.weights)
    )


def format_lamination(lam: Lamination) -> str:
    return "\n".join(f"{w}\t{format_word(c.word)}" for c, w in lam.weights)


def parse_lamination(s: Surface, text: str) -> Lamination:
    """One component per line as RATIONAL<TAB>word; inline strings may
    separate components with commas or semicolons instead of newlines."""
    acc = {}
    for chunk in text.replace(";", "\n").replace(",", "\n").splitlines():
        line = chunk.strip()
        if not line or line.startswith("#"):
            continue
        weight_text, _, word_text = line.partition("\t")
        if not word_text:
            weight_text, _, word_text = line.partition(" ")
        if not word_text.strip():
            raise ValueError(f"lamination line {line!r} lacks a word")
        cls = canonical_class(s, parse_word(s, word_text.strip()))
        acc[cls] = acc.get(cls, Fraction(0)) + Fraction(weight_text.strip())
    return make_lamination(s, acc)


# -- the valuation -------------------------------------------------------------


@total_ordering
@dataclass(frozen=True)
class ValuationValue:
    """A rational, or the bottom element taken only by the zero expression."""

    finite: bool
    value: Fraction

    @staticmethod
    def bottom() -> "ValuationValue":
        return ValuationValue(finite=False, value=Fraction(0))

    @staticmethod
    def of(value) -> "ValuationValue":
        return ValuationValue(finite=True, value=Fraction(value))

    def is_bottom(self) -> bool:
        return not self.finite

    def add(self, other: "ValuationValue") -> "ValuationValue":
        if not (self.finite and other.finite):
            return ValuationValue.bottom()
        return ValuationValue.of(self.value + other.value)

    def __lt__(self, other: "ValuationValue") -> bool:
        if not self.finite:
            return other.finite
        if not other.finite:
            return False
        return self.value < other.value

    def __str__(self) -> str:
        return str(self.value) if self.finite else "-inf"


def lamination_intersection(s: Surface, lam: Lamination, c: CurveClass) -> Fraction:
    total = Fraction(0)
    for comp, w in lam.weights:
        total += w * intersection_number(s, comp, c)
    return total


def multicurve_intersection(s: Surface, lam: Lamination, mc: Multicurve) -> Fraction:
    total = Fraction(0)
    for comp, mult in mc.components:
        total += mult * lamination_intersection(s, lam, comp)
    return total


def valuate(s: Surface, lam: Lamination, f: TraceExpression) -> ValuationValue:
    if f.is_zero():
        return ValuationValue.bottom()
    return ValuationValue.of(
        max(multicurve_intersection(s, lam, mc) for mc, _ in f.terms)
    )


# -- checks with reports --------------------------------------------------------


@dataclass(frozen=True)
class ThurstonReport:
    """Geometric count against the valuation of the expanded trace."""

    delta: CurveClass
    word: tuple
    diagram_count: int
    expansion_value: ValuationValue

    @property
    def ok(self) -> bool:
        return self.expansion_value == ValuationValue.of(self.diagram_count)

    def __str__(self) -> str:
        verdict = "ok" if self.ok else "MISMATCH"
        return (
            f"diagram={self.diagram_count}"
            f" expansion={self.expansion_value} {verdict}"
        )


def thurston_max_check(s: Surface, delta: CurveClass, word) -> ThurstonReport:
    """Intersection with a simple class read two ways: off the taut pair
    diagram, and as the valuation of the expanded trace."""
    if not is_simple(s, delta):
        raise NotSimple(f"{format_word(delta.word)} is not a simple class")
    word = tuple(word)
    lam = make_lamination(s, {delta: 1})
    value = valuate(s, lam, expand_trace(s, word))
    reduced = normalize_word(s, word)
    if reduced:
        count = intersection_number(s, delta, canonical_class(s, reduced))
    else:
        count = 0
    return ThurstonReport(
        delta=delta, word=word, diagram_count=count, expansion_value=value
    )


@dataclass(frozen=True)
class MultiplicativityReport:
    left_value: ValuationValue
    right_value: ValuationValue
    product_value: ValuationValue

    @property
    def ok(self) -> bool:
        return self.product_value == self.left_value.add(self.right_value)

    def __str__(self) -> str:
        verdict = "ok" if self.ok else "MISMATCH"
        return (
            f"v(fg)={self.product_value} v(f)={self.left_value}"
            f" v(g)={self.right_value} {verdict}"
        )


def multiplicativity_check(
    s: Surface, lam: Lamination, f: TraceExpression, g: TraceExpression
) -> MultiplicativityReport:
    return MultiplicativityReport(
        left_value=valuate(s, lam, f),
        right_value=valuate(s, lam, g),
        product_value=valuate(s, lam, multiply_expressions(s, f, g)),
    )


@dataclass(frozen=True)
class DiscretenessReport:
    discrete: bool
    witness: CurveClass | None
    value: Fraction | None

    def __str__(self) -> str:
        if self.discrete:
            return "Discrete"
        if self.witness is None:
            return "NotDiscrete witness=none-within-bound"
        return (
            f"NotDiscrete witness={format_word(self.witness.word)}"
            f" value={self.value}"
        )


def classify_discrete(s: Surface, lam: Lamination) -> DiscretenessReport:
    """Integer-valued exactly for half-integer weights whose doubled
    multicurve is null-homologous mod 2; otherwise hunt a witness curve
    with fractional pairing among simple classes of bounded length."""
    doubled = [(c, 2 * w) for c, w in lam.weights]
    half_integral = all(w.denominator == 1 for _, w in doubled)
    if half_integral:
        parity = [0] * (2 * s.genus)
        for c, w in doubled:
            if int(w) % 2:
                for k, entry in enumerate(homology_class(s, c.word, "Z2").coords):
                    parity[k] = (parity[k] + entry) % 2
        if not any(parity):
            return DiscretenessReport(discrete=True, witness=None, value=None)
    for c in enumerate_simple_classes(s, WITNESS_LENGTH_BOUND):
        value = lamination_intersection(s, lam, c)
        if value.denominator != 1:
            return DiscretenessReport(discrete=False, witness=c, value=value)
    return DiscretenessReport(discrete=False, witness=None, value=None)


@dataclass(frozen=True)
class PositivityReport:
    bound: int
    positive: bool
    witness: CurveClass | None

    def __str__(self) -> str:
        if self.positive:
            return f"Positive bound={self.bound}"
        return (
            f"NotPositive witness={format_word(self.witness.word)}"
            f" bound={self.bound}"
        )


def check_positive_up_to(s: Surface, lam: Lamination, bound: int) -> PositivityReport:
    """Positive pairing with every simple class of length <= bound."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    for c in enumerate_simple_classes(s, bound):
        if lamination_intersection(s, lam, c) == 0:
            return PositivityReport(bound=bound, positive=False, witness=c)
    return PositivityReport(bound=bound, positive=True, witness=None)


@dataclass(frozen=True)
class StrictnessReport:
    bound: int
    strict: bool
    first: Multicurve | None
    second: Multicurve | None
    value: Fraction | None

    def __str__(self) -> str:
        if self.strict:
            return f"Strict bound={self.bound}"
        return (
            f"NotStrict first={format_multicurve(self.first)}"
            f" second={format_multicurve(self.second)}"
            f" value={self.value} bound={self.bound}"
        )


def check_strict_up_to(s: Surface, lam: Lamination, bound: int) -> StrictnessReport:
    """Pairwise-distinct values on all multicurves of total length <= bound."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    seen: dict = {}
    for mc in enumerate_multicurves(s, bound):
        value = multicurve_intersection(s, lam, mc)
        if value in seen:
            return StrictnessReport(
                bound=bound, strict=False, first=seen[value], second=mc, value=value
            )
        seen[value] = mc
    return StrictnessReport(
        bound=bound, strict=True, first=None, second=None, value=None
    )


def curv_normalize(s: Surface, cls: CurveClass) -> Lamination:
    """Weight 1 on a non-separating simple class, 1/2 on a separating one."""
    if not is_simple(s, cls):
        raise NotSimple(f"{format_word(cls.word)} is not a simple class")
    separating = homology_class(s, cls.word).is_zero()
    return make_lamination(s, {cls: Fraction(1, 2) if separating else Fraction(1)})
