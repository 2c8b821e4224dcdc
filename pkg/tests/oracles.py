"""Independent reference computations built on sympy.

Nothing here calls the engine's arithmetic: series are converted to sympy
expressions, the computation is redone symbolically, and the answer is
compared back.
"""

from __future__ import annotations

from fractions import Fraction

import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

BETA = sympy.Symbol("beta")


def tsym(i):
    return sympy.Symbol(f"t_{i}")


def coeff_symbol(ring, k):
    return BETA if ring.has_beta else tsym(k + 1)


def scalar_to_sympy(x):
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    return sympy.Integer(x)


def to_sympy(series):
    """A TruncatedSeries as a sympy expression in its variable names and t_i / beta."""
    sp = series.space
    xs = [sympy.Symbol(n) for n in sp.names]
    total = sympy.Integer(0)
    for (sexp, cexp), x in series.flat_items():
        term = scalar_to_sympy(x)
        for v, e in zip(xs, sexp):
            term *= v ** e
        for k, e in enumerate(cexp):
            term *= coeff_symbol(sp.ring, k) ** e
        total += term
    return sympy.expand(total)


def truncate(expr, names, weights, D):
    """Drop every monomial whose weighted order in ``names`` exceeds ``D``."""
    xs = [sympy.Symbol(n) for n in names]
    expr = sympy.expand(expr)
    if expr == 0:
        return expr
    out = sympy.Integer(0)
    for term in sympy.Add.make_args(expr):
        powers = term.as_powers_dict()
        order = sum(w * int(powers.get(x, 0)) for x, w in zip(xs, weights))
        if order <= D:
            out += term
    return sympy.expand(out)


def same(series, expr) -> bool:
    return sympy.expand(to_sympy(series) - expr) == 0


def _poly_truncate(p, nvars, D):
    """Keep monomials whose total degree in the first ``nvars`` generators is at most ``D``."""
    terms = {m: c for m, c in p.terms() if sum(m[:nvars]) <= D}
    return sympy.Poly.from_dict(terms, *p.gens, domain=p.domain) if terms else sympy.Poly(0, *p.gens, domain=p.domain)


def universal_law(D):
    """``F(u, v)`` for the generic logarithm by the order-by-order recursion.

    Writing ``F = F_1 + F_2 + ...`` by total order, ``log F = log u + log v``
    determines ``F_k`` from the lower pieces: its order-``k`` part is
    ``F_k + [sum_{i>=2} t_{i-1} (F_1 + ... + F_{k-1})^i]_k``.
    """
    u, v = sympy.symbols("u v")
    ts = [tsym(i) for i in range(1, max(D, 2))]
    gens = (u, v, *ts)
    F = sympy.Poly(u + v, *gens, domain=sympy.QQ)
    for k in range(2, D + 1):
        rhs = sympy.Poly(tsym(k - 1) * (u ** k + v ** k), *gens, domain=sympy.QQ)
        partial = sympy.Poly(0, *gens, domain=sympy.QQ)
        power = F
        for i in range(2, k + 1):
            power = _poly_truncate(power * F, 2, k)
            partial += power * sympy.Poly(tsym(i - 1), *gens, domain=sympy.QQ)
        order_k = {m: c for m, c in partial.terms() if m[0] + m[1] == k}
        if order_k:
            rhs -= sympy.Poly.from_dict(order_k, *gens, domain=sympy.QQ)
        F = F + rhs
    return sympy.expand(F.as_expr())


def formal_solve_inverse(F, D):
    """Power series ``i(t)`` with ``F(t, i(t)) = 0``, by undetermined coefficients."""
    t = sympy.Symbol("t")
    cs = sympy.symbols(f"c1:{D + 1}")
    guess = sum(c * t ** (k + 1) for k, c in enumerate(cs))
    u, v = sympy.symbols("u v")
    expr = truncate(F.subs({u: t, v: guess}, simultaneous=True), ["t"], [1], D)
    poly = sympy.Poly(expr, t)
    sol = sympy.solve([poly.coeff_monomial(t ** k) for k in range(1, D + 1)], cs, dict=True)[0]
    return sympy.expand(guess.subs(sol))


def invariant_factors(rows, ncols):
    """Invariant factors of ``Z^ncols / rowspan(rows)``: torsion first, then zeros."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return [0] * ncols
    m = sympy.Matrix(rows)
    snf = sympy_snf(m, domain=sympy.ZZ)
    diag = [abs(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0]
    return sorted(int(d) for d in diag if d != 1) + [0] * (ncols - len(diag))


def rank(rows):
    rows = [r for r in rows if any(r)]
    return sympy.Matrix(rows).rank() if rows else 0


def count_standard_flag_monomials(m):
    """``prod_j (m - j + 1) = m!`` computed by brute enumeration."""
    from itertools import product

    return sum(1 for _ in product(*[range(m - j + 1) for j in range(1, m + 1)]))


def partitions_in_box(d, rows, cols):
    """Partitions of ``d`` with at most ``rows`` parts, each at most ``cols``."""

    def rec(remaining, parts_left, largest):
        if remaining == 0:
            return 1
        if parts_left == 0:
            return 0
        return sum(rec(remaining - p, parts_left - 1, p) for p in range(1, min(largest, remaining) + 1))

    return rec(d, rows, cols)
