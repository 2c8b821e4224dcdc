"""Graded ring presentations and their normal forms.

A presentation is a coefficient ring, generators of positive degree, and
relations.  Three normal-form strategies are used:

``monic``
    every relation is a :class:`MonicRewrite` ``v**p = rhs`` whose right hand
    side has lower ``v``-degree.  Reduction rewrites until no monomial is
    divisible by a leading power, and the standard monomials form a free basis.
``general``
    arbitrary homogeneous relations.  The degree-``d`` piece is the
    associated graded for the order filtration: order-``d`` monomials modulo
    the lowest-order forms of monomial multiples of the relations, with
    integral structure read off by Smith normal form.  This is exact for a
    single relation over a domain and for relations homogeneous in order.
``subring``
    the ring is the subring of an ambient presentation generated by the
    images of the generators; normal forms are the ambient ones and each
    piece is the free module on generator monomials modulo the integer kernel
    of the map to the ambient piece.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..algebra.rings import CoefficientRingSpec
from ..algebra.series import SeriesSpace, TruncatedSeries, coefficient_specialize, series_to_json
from ..errors import GradingError, StrategyError, StructuralError, TruncationError
from .linalg import integer_left_kernel, quotient_invariants, rational_rank


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    kind: str = "series"  # or "polynomial"

    def __post_init__(self):
        if self.degree <= 0:
            raise GradingError(f"generator {self.name} must have positive degree")
        if self.kind not in ("series", "polynomial"):
            raise StructuralError(f"unknown generator kind {self.kind!r}")


@dataclass(frozen=True)
class MonicRewrite:
    """``variable ** power = rhs``."""

    variable: str
    power: int
    rhs: TruncatedSeries

    def element(self) -> TruncatedSeries:
        sp = self.rhs.space
        i = sp.index(self.variable)
        sexp = tuple(self.power if j == i else 0 for j in range(sp.nvars))
        return sp.monomial(sexp) - self.rhs

    def to_json(self) -> dict:
        return {"type": "monic", "variable": self.variable, "power": self.power,
                "rhs": series_to_json(self.rhs), "element": series_to_json(self.element())}


@dataclass(frozen=True)
class GeneralRelation:
    element: TruncatedSeries

    def to_json(self) -> dict:
        return {"type": "general", "element": series_to_json(self.element)}


@dataclass(frozen=True)
class SubringEmbedding:
    ambient: RingPresentation
    images: tuple  # ((generator name, ambient element), ...)

    def image_map(self) -> dict:
        return dict(self.images)


@dataclass(frozen=True)
class GradedPieceReport:
    degree: int
    invariant_factors: tuple
    rank: int

    def to_json(self) -> dict:
        return {"degree": self.degree, "invariant_factors": list(self.invariant_factors), "rank": self.rank}

    def describe(self, ring: CoefficientRingSpec | None = None) -> str:
        if not self.invariant_factors:
            base = "Q-rank" if ring is None else f"rank over {ring}"
            return f"{base} {self.rank}"
        parts = [("Z" if f == 0 else f"Z/{f}") for f in self.invariant_factors]
        return " ⊕ ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GradedPiece:
    """Degree-``d`` piece as ``(free module on basis) / rowspan(relations)``."""

    degree: int
    basis: tuple
    relations: tuple
    integral: bool

    def report(self) -> GradedPieceReport:
        if self.integral:
            inv = quotient_invariants([list(r) for r in self.relations], len(self.basis))
            return GradedPieceReport(self.degree, tuple(inv), inv.count(0))
        rank = len(self.basis) - rational_rank([list(r) for r in self.relations])
        return GradedPieceReport(self.degree, (), rank)


def monomials_of_order(weights: Sequence[int], d: int, bounds: Sequence | None = None):
    """All exponent vectors of weighted order exactly ``d`` (optionally ``e_j < bounds[j]``)."""
    n = len(weights)
    out = []

    def rec(j, remaining, acc):
        if j == n:
            if remaining == 0:
                out.append(tuple(acc))
            return
        w = weights[j]
        top = remaining // w
        if bounds is not None and bounds[j] is not None:
            top = min(top, bounds[j] - 1)
        for e in range(top, -1, -1):
            acc.append(e)
            rec(j + 1, remaining - e * w, acc)
            acc.pop()

    if d >= 0:
        rec(0, d, [])
    return out


def _degree_zero_scalar(ring: CoefficientRingSpec, cexp: tuple, x, shift: int = 0):
    """Scalar of a coefficient term of degree ``shift`` after removing a unit β power."""
    if not cexp:
        return x
    if ring.has_beta and ring.monomial_degree(cexp) == shift:
        return x
    raise StrategyError("graded-piece matrices need scalar entries; got a coefficient of "
                        f"nonzero degree ({ring.format_monomial(cexp)})")


@dataclass(frozen=True, eq=False)
class RingPresentation:
    ring: CoefficientRingSpec
    generators: tuple
    relations: tuple = ()
    truncation: int = 4
    label: str = ""
    embedding: SubringEmbedding | None = None
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", tuple(self.relations))
        sp = self.space
        seen = set()
        for rel in self.relations:
            elem = rel.element() if isinstance(rel, MonicRewrite) else rel.element
            if elem.space != sp:
                raise StructuralError(f"relation lives in {elem.space.names}, presentation in {sp.names}")
            if not elem.is_homogeneous():
                raise GradingError(f"relation {elem} is not homogeneous")
            if isinstance(rel, MonicRewrite):
                i = sp.index(rel.variable)
                if rel.power < 0:
                    raise StrategyError("rewrite power must be non-negative")
                if any(s[i] >= rel.power for s in rel.rhs.variable_exponents()):
                    raise StrategyError(f"rewrite for {rel.variable} is not monic: rhs has "
                                        f"{rel.variable}-degree >= {rel.power}")
                if rel.variable in seen:
                    raise StrategyError(f"two rewrite rules for {rel.variable}")
                seen.add(rel.variable)

    # basic structure -------------------------------------------------
    @property
    def space(self) -> SeriesSpace:
        return SeriesSpace(self.ring, tuple((g.name, g.degree) for g in self.generators), self.truncation)

    @property
    def names(self) -> tuple:
        return tuple(g.name for g in self.generators)

    def gen(self, name: str) -> TruncatedSeries:
        return self.space.var(name)

    def generator(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise StructuralError(f"no generator {name!r}")

    @property
    def strategy(self) -> str:
        if self.embedding is not None:
            return "subring"
        if all(isinstance(r, MonicRewrite) for r in self.relations):
            return "monic"
        return "general"

    def relation_elements(self) -> list:
        return [r.element() if isinstance(r, MonicRewrite) else r.element for r in self.relations]

    def monic_rules(self) -> dict:
        return {r.variable: r for r in self.relations if isinstance(r, MonicRewrite)}

    def __eq__(self, other):
        if not isinstance(other, RingPresentation):
            return NotImplemented
        return (self.ring, self.generators, self.relations, self.truncation, self.embedding) == (
            other.ring, other.generators, other.relations, other.truncation, other.embedding)

    def __hash__(self):
        return hash((self.ring, self.generators, self.truncation))

    def element(self, x) -> TruncatedSeries:
        """Coerce ``x`` (a series in a subset of the generators, or a scalar) into this ring."""
        sp = self.space
        if isinstance(x, TruncatedSeries):
            if x.space == sp:
                return x
            if x.truncation < sp.truncation:
                raise StructuralError("element is truncated below the presentation's truncation")
            return x.with_truncation(sp.truncation).embed(sp)
        return sp.const(x)

    # normal forms ----------------------------------------------------
    def reduce(self, x) -> TruncatedSeries:
        """Unique normal form of ``x``; idempotent."""
        if self.strategy == "subring":
            amb = self.embedding.ambient
            if isinstance(x, TruncatedSeries) and x.space == amb.space:
                return amb.reduce(x)
            return amb.reduce(self.to_ambient(x))
        if self.strategy != "monic":
            raise StrategyError("monic reduction needs every relation to be a MonicRewrite")
        x = self.element(x)
        out = self.space.zero()
        for sexp, c in x.coefficients().items():
            out = out + self._nf(sexp) * c
        return out

    def _nf(self, sexp) -> TruncatedSeries:
        memo = self._memo.setdefault("nf", {})
        if sexp in memo:
            return memo[sexp]
        sp = self.space
        res = None
        for i, name in enumerate(sp.names):
            rule = self.monic_rules().get(name)
            if rule is not None and sexp[i] >= rule.power:
                q = list(sexp)
                q[i] -= rule.power
                res = self.reduce(sp.monomial(q) * rule.rhs)
                break
        if res is None:
            res = sp.monomial(sexp)
        memo[sexp] = res
        return res

    def to_ambient(self, x) -> TruncatedSeries:
        emb = self.embedding
        x = self.element(x)
        amb = emb.ambient.space
        images = emb.image_map()
        return x.compose([images[n] for n in self.names]) if self.names else amb.const(x.constant_term())

    # graded pieces ---------------------------------------------------
    @property
    def integral(self) -> bool:
        return not self.ring.is_rational

    def standard_monomials(self, d: int) -> list:
        rules = self.monic_rules()
        bounds = [rules[n].power if n in rules else None for n in self.names]
        return monomials_of_order(self.space.weights, d, bounds)

    def graded_piece(self, d: int) -> GradedPiece:
        if d > self.truncation:
            raise TruncationError(f"degree {d} exceeds truncation {self.truncation}")
        memo = self._memo.setdefault("pieces", {})
        if d not in memo:
            memo[d] = getattr(self, "_piece_" + self.strategy)(d)
        return memo[d]

    def _piece_monic(self, d):
        return GradedPiece(d, tuple(self.standard_monomials(d)), (), self.integral)

    def _piece_general(self, d):
        sp = self.space
        basis = monomials_of_order(sp.weights, d)
        index = {m: k for k, m in enumerate(basis)}
        rows = []
        for elem in self.relation_elements():
            k = elem.order()
            if k is None or k > d:
                continue
            lead = elem.order_part(k)
            shift = elem.degree() - k
            for m in monomials_of_order(sp.weights, d - k):
                row = [0] * len(basis)
                for (sexp, cexp), x in lead.flat_items():
                    target = tuple(a + b for a, b in zip(sexp, m))
                    row[index[target]] += _degree_zero_scalar(self.ring, cexp, x, shift)
                if any(row):
                    rows.append(tuple(row))
        return GradedPiece(d, tuple(basis), tuple(rows), self.integral)

    def _piece_subring(self, d):
        amb = self.embedding.ambient
        basis = monomials_of_order(self.space.weights, d)
        target = amb.graded_piece(d)
        images = [amb.coordinates(self.to_ambient(self.space.monomial(m)), d) for m in basis]
        if not target.basis:
            kernel = [[int(i == j) for j in range(len(basis))] for i in range(len(basis))]
        else:
            if self.integral or all(isinstance(x, int) for row in images for x in row):
                kernel = integer_left_kernel(images, len(target.basis))
            else:
                raise StrategyError("subring pieces need integral image coordinates")
        return GradedPiece(d, tuple(basis), tuple(tuple(r) for r in kernel), self.integral)

    def coordinates(self, x, d: int) -> list:
        """Coordinates of the order-``d`` component of ``x`` in the degree-``d`` piece basis."""
        piece = self.graded_piece(d)
        index = {m: k for k, m in enumerate(piece.basis)}
        if self.strategy == "monic":
            x = self.reduce(x)
        else:
            x = self.element(x)
        row = [0] * len(piece.basis)
        shift = 0
        for (sexp, cexp), val in x.order_part(d).flat_items():
            if sexp not in index:
                raise StrategyError(f"monomial {sexp} is not in the degree-{d} basis")
            row[index[sexp]] += _degree_zero_scalar(self.ring, cexp, val, shift)
        return row

    def piece_report(self, d: int) -> GradedPieceReport:
        return self.graded_piece(d).report()

    def ranks(self, max_degree: int | None = None) -> list:
        top = self.truncation if max_degree is None else max_degree
        return [self.piece_report(d).rank for d in range(top + 1)]

    def rank_over(self, base: Sequence[str] = ()) -> int | None:
        """Rank as a module over the coefficients adjoined with the ``base`` generators.

        ``None`` when some remaining generator is unbounded.  Only defined for
        monic presentations, where standard monomials form a basis.
        """
        if self.strategy != "monic":
            raise StrategyError("rank_over needs a monic presentation")
        rules = self.monic_rules()
        total = 1
        for name in self.names:
            if name in base:
                continue
            if name not in rules:
                return None
            total *= rules[name].power
        return total

    # transformations -------------------------------------------------
    def specialize(self, target: CoefficientRingSpec, images) -> RingPresentation:
        def sp(x):
            return coefficient_specialize(x, images, target)

        rels = []
        for r in self.relations:
            if isinstance(r, MonicRewrite):
                rels.append(MonicRewrite(r.variable, r.power, sp(r.rhs)))
            else:
                rels.append(GeneralRelation(sp(r.element)))
        emb = None
        if self.embedding is not None:
            amb = self.embedding.ambient.specialize(target, images)
            emb = SubringEmbedding(amb, tuple((n, sp(e)) for n, e in self.embedding.images))
        return RingPresentation(target, self.generators, tuple(rels), self.truncation, self.label, emb)

    def over(self, ring: CoefficientRingSpec) -> RingPresentation:
        rels = []
        for r in self.relations:
            if isinstance(r, MonicRewrite):
                rels.append(MonicRewrite(r.variable, r.power, r.rhs.over(ring)))
            else:
                rels.append(GeneralRelation(r.element.over(ring)))
        emb = None
        if self.embedding is not None:
            emb = SubringEmbedding(self.embedding.ambient.over(ring),
                                   tuple((n, e.over(ring)) for n, e in self.embedding.images))
        return RingPresentation(ring, self.generators, tuple(rels), self.truncation, self.label, emb)

    def rationalize(self) -> RingPresentation:
        return self.over(self.ring.rationalization())

    def adjoin(self, generators: Sequence[Generator], relations: Sequence = (), label: str = "",
               truncation: int | None = None) -> RingPresentation:
        """Add generators (and relations written over the enlarged generator list)."""
        if self.embedding is not None:
            raise StrategyError("cannot adjoin generators to a subring presentation")
        gens = self.generators + tuple(generators)
        D = self.truncation if truncation is None else truncation
        new = SeriesSpace(self.ring, tuple((g.name, g.degree) for g in gens), D)
        moved = []
        for r in self.relations:
            if isinstance(r, MonicRewrite):
                moved.append(MonicRewrite(r.variable, r.power, r.rhs.with_truncation(min(D, r.rhs.truncation)).embed(new)))
            else:
                moved.append(GeneralRelation(r.element.with_truncation(min(D, r.element.truncation)).embed(new)))
        return RingPresentation(self.ring, gens, tuple(moved) + tuple(relations), D, label or self.label)

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "ring": self.ring.kind.value,
            "generators": [{"name": g.name, "degree": g.degree, "kind": g.kind} for g in self.generators],
            "relations": [r.to_json() for r in self.relations],
            "truncation": self.truncation,
            "strategy": self.strategy,
        }
        if self.embedding is not None:
            out["embedding"] = {
                "ambient": self.embedding.ambient.label,
                "images": {n: series_to_json(e) for n, e in self.embedding.images},
            }
        return out

    def describe(self) -> str:
        gens = ", ".join(f"{g.name} (deg {g.degree}, {g.kind})" for g in self.generators)
        lines = [f"{self.label or 'presentation'} over {self.ring}, truncated at order {self.truncation}",
                 f"  generators: {gens or 'none'}"]
        if self.embedding is not None:
            lines.append(f"  subring of {self.embedding.ambient.label}:")
            for n, e in self.embedding.images:
                lines.append(f"    {n} ↦ {e}")
        for r in self.relations:
            if isinstance(r, MonicRewrite):
                lines.append(f"  relation: {r.element()} = 0   [rewrite {r.variable}^{r.power}]")
            else:
                lines.append(f"  relation: {r.element} = 0")
        if not self.relations:
            lines.append("  relations: none")
        return "\n".join(lines)


def polynomial_ring(ring, generators, D, label="") -> RingPresentation:
    return RingPresentation(ring, tuple(generators), (), D, label)


__all__ = [
    "Generator",
    "GeneralRelation",
    "GradedPiece",
    "GradedPieceReport",
    "MonicRewrite",
    "RingPresentation",
    "SubringEmbedding",
    "monomials_of_order",
    "polynomial_ring",
]
