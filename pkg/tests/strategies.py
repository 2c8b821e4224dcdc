"""Hypothesis strategies for coefficients and truncated series."""

from fractions import Fraction

from hypothesis import strategies as st

from eqcob.algebra import GradedCoefficient, SeriesSpace

small_int = st.integers(min_value=-4, max_value=4)
small_scalar = st.one_of(small_int, st.fractions(min_value=-3, max_value=3, max_denominator=4))


def lazard_monomial(max_index=3, max_exp=2):
    return st.lists(st.integers(0, max_exp), min_size=0, max_size=max_index).map(tuple)


def coefficient(ring, max_terms=3):
    """A possibly inhomogeneous coefficient in ``ring``."""
    if ring.is_lazard:
        mono = lazard_monomial()
    elif ring.has_beta:
        mono = st.integers(-2, 2).map(lambda e: (e,) if e else ())
    else:
        mono = st.just(())
    scal = small_scalar if ring.is_rational else small_int
    return st.dictionaries(mono, scal, max_size=max_terms).map(lambda d: GradedCoefficient(ring, d))


def series(space: SeriesSpace, max_terms=5, zero_constant=False):
    """Random series in ``space`` with arbitrary exponents up to the truncation."""
    n = space.nvars
    exps = st.lists(st.integers(0, space.truncation), min_size=n, max_size=n).map(tuple)
    if zero_constant:
        exps = exps.filter(lambda e: any(e))
    exps = exps.filter(lambda e: space.order(e) <= space.truncation)
    return st.dictionaries(exps, coefficient(space.ring), max_size=max_terms).map(space.from_coefficients)


def homogeneous_series(space: SeriesSpace, degree: int, max_terms=5):
    """Random series homogeneous of ``degree`` over the Lazard ring or a β ring."""
    ring = space.ring
    n = space.nvars

    def build(draw_terms):
        coeffs = {}
        for sexp, scalar in draw_terms:
            order = space.order(sexp)
            need = degree - order  # degree of the coefficient
            if ring.has_beta:
                coeffs[sexp] = GradedCoefficient(ring, {((-need,) if need else ()): scalar})
            elif ring.is_lazard:
                if need > 0:
                    continue
                coeffs[sexp] = GradedCoefficient(ring, {(((0,) * (-need - 1)) + (1,)) if need else (): scalar})
            elif need == 0:
                coeffs[sexp] = scalar
        return space.from_coefficients(coeffs)

    exps = st.lists(st.integers(0, space.truncation), min_size=n, max_size=n).map(tuple)
    exps = exps.filter(lambda e: space.order(e) <= space.truncation)
    scal = small_scalar if ring.is_rational else small_int
    return st.lists(st.tuples(exps, scal), max_size=max_terms).map(build)


def unit_linear_series(space: SeriesSpace):
    """``c u + higher`` with ``c`` a unit, single variable."""
    ring = space.ring
    units = [1, -1] if not ring.is_rational else [1, -1, 2, Fraction(1, 3)]
    lead = st.sampled_from(units)
    return st.tuples(lead, series(space, zero_constant=True)).map(
        lambda p: space.var(space.names[0]) * p[0] + _drop_linear(p[1]))


def _drop_linear(s):
    sp = s.space
    return sp.from_coefficients({e: c for e, c in s.coefficients().items() if sp.order(e) >= 2})
