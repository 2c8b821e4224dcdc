from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

import oracles
from eqcob.algebra import (
    INTEGER_ADDITIVE,
    LAURENT_MULTIPLICATIVE,
    LAZARD_RATIONAL,
    RATIONAL_ADDITIVE,
    RATIONAL_MULTIPLICATIVE,
    GradedCoefficient,
    SeriesSpace,
    coefficient_specialize,
    ring_from_name,
    series_add,
    series_compose,
    series_from_json,
    series_mul,
    series_reciprocal,
    series_reversion,
    series_to_json,
)
from eqcob.errors import (
    CompositionError,
    GradingError,
    ReciprocalError,
    ReversionError,
    StructuralError,
)
from strategies import coefficient, homogeneous_series, series, unit_linear_series

L = LAZARD_RATIONAL
U3 = SeriesSpace(L, (("u", 1),), 3)
U4 = SeriesSpace(L, (("u", 1),), 4)
UV3 = SeriesSpace(L, (("u", 1), ("v", 1)), 3)


def t(i, p=1):
    return L.t(i, p)


# coefficient rings ---------------------------------------------------
def test_lazard_generator_degrees():
    assert [d for _, d in L.generators(4)] == [-1, -2, -3, -4]
    assert (t(1) * t(2)).degree() == -3
    assert (t(3) ** 2).degree() == -6


def test_beta_is_the_only_invertible_generator():
    b = LAURENT_MULTIPLICATIVE.beta()
    assert b.is_unit()
    assert b.inverse() * b == 1
    assert (b ** -2).degree() == 2
    assert not t(1).is_unit()
    with pytest.raises(StructuralError):
        GradedCoefficient(L, {(-1,): 1})


def test_integer_units():
    assert GradedCoefficient(INTEGER_ADDITIVE, {(): -1}).is_unit()
    assert not GradedCoefficient(INTEGER_ADDITIVE, {(): 2}).is_unit()
    assert GradedCoefficient(RATIONAL_ADDITIVE, {(): 2}).is_unit()


def test_scalars_are_normalized():
    c = GradedCoefficient(RATIONAL_ADDITIVE, {(): Fraction(4, 2)})
    (_, x), = c.items()
    assert x == 2 and type(x) is int
    zero = GradedCoefficient(L, {(1,): 0, (): 0})
    assert zero.is_zero() and zero == 0
    assert GradedCoefficient(L, {(1, 0, 0): 3}) == GradedCoefficient(L, {(1,): 3})


def test_ring_names_round_trip():
    for r in (L, INTEGER_ADDITIVE, LAURENT_MULTIPLICATIVE, RATIONAL_ADDITIVE, RATIONAL_MULTIPLICATIVE):
        assert ring_from_name(r.kind.value) == r


def test_rationalization():
    assert INTEGER_ADDITIVE.rationalization() == RATIONAL_ADDITIVE
    assert LAURENT_MULTIPLICATIVE.rationalization() == RATIONAL_MULTIPLICATIVE
    assert L.rationalization() == L


@given(coefficient(L), coefficient(L), coefficient(L))
def test_coefficient_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


# series arithmetic ----------------------------------------------------
def test_add_examples():
    u = U4.var("u")
    assert ((U4.one() + u) + (-U4.one() - u)).is_zero()
    assert str(u + u) == "2u"
    assert series_add(u * t(1), u * t(2)) == u * (t(1) + t(2))


def test_mul_examples():
    u = U4.var("u")
    assert (1 + u) * (1 - u) == 1 - u ** 2
    sp1 = SeriesSpace(L, (("u", 1),), 1)
    assert (sp1.var("u") * sp1.var("u")).is_zero()
    sp2 = SeriesSpace(L, (("u", 1),), 2)
    x = sp2.var("u")
    got = series_mul(1 + x * t(1), 1 + x * t(2))
    assert got == 1 + x * (t(1) + t(2)) + x ** 2 * t(1) * t(2)


def test_mismatched_operands():
    with pytest.raises(StructuralError):
        U3.var("u") + U4.var("u")
    with pytest.raises(StructuralError):
        U3.var("u") + SeriesSpace(INTEGER_ADDITIVE, (("u", 1),), 3).var("u")
    with pytest.raises(StructuralError):
        U3.var("u") + UV3.var("u")


@given(series(UV3), series(UV3), series(UV3))
def test_series_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(series(UV3), series(UV3))
def test_product_matches_sympy(a, b):
    expected = oracles.truncate(oracles.to_sympy(a) * oracles.to_sympy(b), ["u", "v"], [1, 1], 3)
    assert oracles.same(a * b, expected)


@given(series(UV3))
def test_no_term_exceeds_truncation(a):
    for sexp in (a * a * a).variable_exponents():
        assert sum(sexp) <= 3


def test_weighted_truncation():
    sp = SeriesSpace(INTEGER_ADDITIVE, (("x", 1), ("y", 2)), 4)
    x, y = sp.vars()
    assert (y * y).order() == 4
    assert (y * y * x).is_zero()
    assert (x ** 4).order() == 4


# composition -----------------------------------------------------------
def test_compose_examples():
    sp = SeriesSpace(INTEGER_ADDITIVE, (("u", 1),), 3)
    u = sp.var("u")
    assert series_compose(u + u ** 2, [u + u ** 3]) == u + u ** 2 + u ** 3
    f = u * 3 + u ** 2 * 5
    assert f.compose([u]) == f
    assert u.compose([f]) == f


def test_compose_rejects_constant_term():
    u = U3.var("u")
    with pytest.raises(CompositionError):
        (u ** 2).compose([1 + u])


@given(series(U4), series(U4, zero_constant=True))
def test_compose_matches_sympy(f, g):
    x = sympy.Symbol("u")
    expected = oracles.truncate(oracles.to_sympy(f).subs(x, oracles.to_sympy(g)), ["u"], [1], 4)
    assert oracles.same(f.compose([g]), expected)


@given(series(U3, zero_constant=True), series(U3, zero_constant=True), series(U3, zero_constant=True))
def test_compose_associative(f, g, h):
    assert f.compose([g]).compose([h]) == f.compose([g.compose([h])])


def test_two_variable_composition():
    u, v = UV3.vars()
    F = u + v + u * v * t(1)
    w = SeriesSpace(L, (("w", 1),), 3).var("w")
    assert F.compose([w, w]) == w * 2 + w ** 2 * t(1)


# reversion and reciprocal ----------------------------------------------
def test_reversion_examples():
    u = U3.var("u")
    assert series_reversion(u) == u
    assert series_reversion(u + u ** 2 * t(1)) == u - u ** 2 * t(1) + u ** 3 * t(1, 2) * 2
    sp = SeriesSpace(RATIONAL_ADDITIVE, (("u", 1),), 2)
    assert series_reversion(sp.var("u") * 2) == sp.var("u") * Fraction(1, 2)


def test_reversion_needs_unit_linear_term():
    sp = SeriesSpace(INTEGER_ADDITIVE, (("u", 1),), 3)
    with pytest.raises(ReversionError):
        series_reversion(sp.var("u") * 2)
    with pytest.raises(ReversionError):
        series_reversion(U3.var("u") * t(1) + U3.var("u") ** 2)


@given(unit_linear_series(U4))
def test_reversion_is_two_sided_inverse(f):
    g = series_reversion(f)
    u = U4.var("u")
    assert f.compose([g]) == u
    assert g.compose([f]) == u
    assert series_reversion(g) == f


def test_reciprocal_examples():
    assert series_reciprocal(U3.one()) == U3.one()
    sp = SeriesSpace(LAURENT_MULTIPLICATIVE, (("u", 1),), 2)
    b = LAURENT_MULTIPLICATIVE.beta()
    u = sp.var("u")
    assert series_reciprocal(1 - u * b) == 1 + u * b + u ** 2 * b * b
    with pytest.raises(ReciprocalError):
        series_reciprocal(SeriesSpace(INTEGER_ADDITIVE, (("u", 1),), 2).const(2))


@given(series(UV3))
def test_reciprocal_when_constant_is_unit(a):
    a = a - a.constant_term() + 1
    assert a * series_reciprocal(a) == 1


# homogeneity -------------------------------------------------------------
@given(homogeneous_series(UV3, 1), homogeneous_series(UV3, 1))
def test_homogeneity_preserved(a, b):
    for x in (a + b, a - b):
        assert x.is_zero() or x.degree() == 1
    p = a * b
    assert p.is_zero() or p.degree() == 2


@given(homogeneous_series(U4, 1), homogeneous_series(U4, 1))
def test_composition_preserves_homogeneity(f, g):
    if g.constant_term().is_zero() and not g.is_zero():
        h = f.compose([g])
        assert h.is_zero() or h.degree() == 1


# specialization -----------------------------------------------------------
def kt_images(i):
    return RATIONAL_MULTIPLICATIVE.beta(i + 1) * Fraction(1, i + 2)


def test_specialize_examples():
    u, v = UV3.vars()
    F = u + v - u * v * t(1) * 2
    assert coefficient_specialize(F, lambda i: RATIONAL_ADDITIVE.zero(), RATIONAL_ADDITIVE) == \
        SeriesSpace(RATIONAL_ADDITIVE, UV3.variables, 3).from_coefficients({(1, 0): 1, (0, 1): 1})
    assert coefficient_specialize(F, lambda i: L.gen(i), L) == F
    got = coefficient_specialize(t(1), kt_images, RATIONAL_MULTIPLICATIVE)
    assert got == RATIONAL_MULTIPLICATIVE.beta() * Fraction(1, 2)


def test_specialize_rejects_wrong_degree():
    with pytest.raises(GradingError):
        coefficient_specialize(t(1), lambda i: RATIONAL_MULTIPLICATIVE.beta(2), RATIONAL_MULTIPLICATIVE)


@given(series(UV3), series(UV3))
def test_specialization_is_a_ring_morphism(a, b):
    def s(x):
        return coefficient_specialize(x, kt_images, RATIONAL_MULTIPLICATIVE)

    assert s(a + b) == s(a) + s(b)
    assert s(a * b) == s(a) * s(b)


# formatting and serialization -----------------------------------------
def test_canonical_text():
    u, v = UV3.vars()
    F = u + v - u * v * t(1) * 2 + u * u * v * (t(1, 2) * 4 - t(2) * 3)
    assert str(F) == "u + v - 2t₁uv + (4t₁² - 3t₂)u²v"
    sp = SeriesSpace(RATIONAL_MULTIPLICATIVE, (("u", 1),), 3)
    x = sp.var("u")
    b = RATIONAL_MULTIPLICATIVE.beta()
    assert str(x + x ** 2 * b * Fraction(1, 2)) == "u + (1/2)βu²"


@given(series(UV3))
def test_json_round_trip(a):
    data = series_to_json(a)
    assert series_from_json(data) == a


@given(st.sampled_from([INTEGER_ADDITIVE, LAURENT_MULTIPLICATIVE, RATIONAL_MULTIPLICATIVE]).flatmap(
    lambda r: series(SeriesSpace(r, (("x", 1), ("y", 2)), 4))))
def test_json_round_trip_other_rings(a):
    assert series_from_json(series_to_json(a)) == a
