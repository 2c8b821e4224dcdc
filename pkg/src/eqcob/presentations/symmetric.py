"""Symmetric functions, complete flag rings and Grassmannian rings."""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement
from typing import Sequence

from ..algebra.rings import INTEGER_ADDITIVE, CoefficientRingSpec
from ..algebra.series import SeriesSpace, TruncatedSeries
from ..errors import ArgumentError, StructuralError, SymmetryError
from .linalg import rational_rank
from .presentation import (
    GeneralRelation,
    Generator,
    MonicRewrite,
    RingPresentation,
    SubringEmbedding,
    monomials_of_order,
)


def symmetric_elementary(elems: Sequence, k: int, one=None):
    """``e_k`` evaluated at ``elems``: the sum of all products of ``k`` distinct entries.

    ``one`` supplies the unit when ``elems`` is empty; otherwise it is taken
    from the first element's space.
    """
    n = len(elems)
    if k < 0 or k > n:
        raise ArgumentError(f"e_{k} is undefined for {n} variables")
    if one is None:
        if not elems:
            raise ArgumentError("e_0 of an empty list needs an explicit unit")
        one = elems[0].space.one()
    total = one * 0
    for idx in combinations(range(n), k):
        term = one
        for i in idx:
            term = term * elems[i]
        total = total + term
    return total


def complete_homogeneous(elems: Sequence, k: int, one):
    total = one * 0
    for idx in combinations_with_replacement(range(len(elems)), k):
        term = one
        for i in idx:
            term = term * elems[i]
        total = total + term
    return total


def elementary_symmetric_in(space: SeriesSpace, names: Sequence[str], k: int) -> TruncatedSeries:
    """``e_k`` of the named variables of ``space``, built from squarefree monomials directly."""
    idx = [space.index(n) for n in names]
    if k < 0 or k > len(idx):
        raise ArgumentError(f"e_{k} is undefined for {len(idx)} variables")
    coeffs = {}
    for chosen in combinations(idx, k):
        sexp = [0] * space.nvars
        for i in chosen:
            sexp[i] = 1
        coeffs[tuple(sexp)] = 1
    return space.from_coefficients(coeffs)


def symmetry_witness(f: TruncatedSeries, names: Sequence[str]):
    """First adjacent transposition ``(i, i+1)`` of ``names`` not fixing ``f``, or ``None``."""
    sp = f.space
    idx = [sp.index(n) for n in names]
    for a in range(len(idx) - 1):
        perm = list(range(sp.nvars))
        perm[idx[a]], perm[idx[a + 1]] = idx[a + 1], idx[a]
        if f.permute(perm) != f:
            return (a, a + 1)
    return None


def express_symmetric(f: TruncatedSeries, names: Sequence[str] | None = None) -> TruncatedSeries:
    """Rewrite a symmetric ``f`` as a polynomial in ``e_1, ..., e_n``.

    Leading-term elimination in lex order: a symmetric polynomial with lex
    leading monomial ``x^a`` (``a`` non-increasing) loses that term after
    subtracting ``c * e_1^(a1-a2) ... e_n^an``.  The result lives in variables
    ``e1..en`` of degrees ``1..n`` over the same ring and truncation.
    """
    sp = f.space
    names = list(sp.names if names is None else names)
    if sorted(names) != sorted(sp.names):
        raise StructuralError("express_symmetric needs f to be a polynomial in exactly the given variables")
    if any(w != 1 for w in sp.weights):
        raise StructuralError("variables must have degree 1")
    w = symmetry_witness(f, names)
    if w is not None:
        raise SymmetryError(f"not invariant under swapping {names[w[0]]} and {names[w[1]]}", witness=w)
    n = len(names)
    idx = [sp.index(nm) for nm in names]
    out_space = SeriesSpace(sp.ring, tuple((f"e{j}", j) for j in range(1, n + 1)), sp.truncation)
    es = [elementary_symmetric_in(sp, names, j) for j in range(1, n + 1)]
    result = {}
    rest = f
    while rest:
        lead = max(rest.variable_exponents(), key=lambda s: tuple(s[i] for i in idx))
        c = rest.coefficient(lead)
        a = [lead[i] for i in idx]
        e_exps = tuple(a[j] - (a[j + 1] if j + 1 < n else 0) for j in range(n))
        if any(e < 0 for e in e_exps):
            raise SymmetryError("leading exponent is not a partition; f is not symmetric")
        prod = sp.one()
        for j, e in enumerate(e_exps):
            if e:
                prod = prod * es[j] ** e
        rest = rest - prod * c
        result[e_exps] = result.get(e_exps, c.ring.zero()) + c
    return out_space.from_coefficients(result)


def flag_ring(m: int, D: int | None = None, ring: CoefficientRingSpec = INTEGER_ADDITIVE) -> RingPresentation:
    """``coefficients[x_1..x_m] / (symmetric polynomials of positive degree)``.

    Normal forms use the rules ``x_j^(m-j+1) -> x_j^(m-j+1) - h_(m-j+1)(x_1..x_j)``
    with ``h_k`` the complete homogeneous polynomial; the standard monomials are
    ``x^a`` with ``a_j <= m - j``.
    """
    if m < 1:
        raise ArgumentError("flag_ring needs m >= 1")
    top = m * (m - 1) // 2
    D = top if D is None else D
    gens = tuple(Generator(f"x{j}", 1, "polynomial") for j in range(1, m + 1))
    sp = SeriesSpace(ring, tuple((g.name, 1) for g in gens), D)
    xs = sp.vars()
    rules = []
    for j in range(1, m + 1):
        p = m - j + 1
        if p > D:
            rhs = sp.zero()
        else:
            rhs = xs[j - 1] ** p - complete_homogeneous(xs[:j], p, sp.one())
        rules.append(MonicRewrite(f"x{j}", p, rhs))
    return RingPresentation(ring, gens, tuple(rules), D, label=f"flag ring F_{m}")


def grassmannian_ring(n: int, i: int, D: int | None = None,
                      ring: CoefficientRingSpec = INTEGER_ADDITIVE) -> RingPresentation:
    """The subring of ``flag_ring(n + i)`` generated by ``η_j = e_j(x_1..x_n)``."""
    if n < 1 or i < 1:
        raise ArgumentError("grassmannian_ring needs n, i >= 1")
    # one degree past the top class so the first relations are visible
    D = n * i + 1 if D is None else D
    amb = flag_ring(n + i, D, ring)
    asp = amb.space
    images = tuple((f"η{j}", elementary_symmetric_in(asp, [f"x{k}" for k in range(1, n + 1)], j))
                   for j in range(1, n + 1))
    gens = tuple(Generator(f"η{j}", j, "polynomial") for j in range(1, n + 1))
    bare = RingPresentation(ring, gens, (), D, f"Gr({n},{n + i})", SubringEmbedding(amb, images))
    # same ring, so the computed pieces carry over
    return RingPresentation(ring, gens, tuple(_minimal_relations(bare)), D, bare.label, bare.embedding,
                            _memo=bare._memo)


def _minimal_relations(p: RingPresentation) -> list:
    """Kernel generators degree by degree, skipping those implied by lower relations."""
    sp = p.space
    found = []  # (degree, coefficient row over that degree's monomials)
    rels = []
    for d in range(1, p.truncation + 1):
        piece = p.graded_piece(d)
        if not piece.relations:
            continue
        index = {m: k for k, m in enumerate(piece.basis)}
        implied = []
        for dd, basis_dd, row in found:
            for m in monomials_of_order(sp.weights, d - dd):
                vec = [0] * len(piece.basis)
                for k, x in enumerate(row):
                    if x:
                        vec[index[tuple(a + b for a, b in zip(basis_dd[k], m))]] += x
                implied.append(vec)
        r = rational_rank(implied)
        for row in piece.relations:
            if rational_rank(implied + [list(row)]) > r:
                implied.append(list(row))
                r += 1
                found.append((d, piece.basis, list(row)))
                rels.append(GeneralRelation(sp.from_coefficients(
                    {m: x for m, x in zip(piece.basis, row) if x})))
    return rels
