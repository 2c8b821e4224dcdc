"""Equivariant coefficient rings assembled from formal group laws and presentations.

Three theories are available.  ``chow`` uses the additive law over the
integers, ``ktheory`` the multiplicative law ``u + v - βuv`` over
``Z[β, 1/β]`` and ``universal`` the law built from the generic logarithm over
``Q[t_1, t_2, ...]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra.rings import (
    INTEGER_ADDITIVE,
    LAURENT_MULTIPLICATIVE,
    LAZARD_RATIONAL,
    RATIONAL_ADDITIVE,
    RATIONAL_MULTIPLICATIVE,
    CoefficientRingSpec,
)
from .algebra.series import SeriesSpace, TruncatedSeries, coefficient_specialize, series_reciprocal
from .errors import (
    ArgumentError,
    GradingError,
    StrategyError,
    StructuralError,
    TruncationError,
)
from .fgl import FormalGroupLaw, fgl_additive, fgl_multiplicative, n_series, universal_fgl
from .presentations import (
    GeneralRelation,
    GradedPieceReport,
    Generator,
    MonicRewrite,
    ProRing,
    RingPresentation,
    elementary_symmetric_in,
    grassmannian_ring,
    monomials_of_order,
    rational_rank,
    symmetry_witness,
)

THEORIES = ("universal", "chow", "ktheory")


@dataclass(frozen=True)
class TheoryDescriptor:
    name: str
    law: FormalGroupLaw
    ring: CoefficientRingSpec

    @property
    def truncation(self) -> int:
        return self.law.truncation

    def point(self, D: int | None = None) -> RingPresentation:
        """The coefficient ring itself, as a presentation with no generators."""
        return RingPresentation(self.ring, (), (), self.truncation if D is None else D, "point")


def theory(name: str | TheoryDescriptor, D: int = 4) -> TheoryDescriptor:
    if isinstance(name, TheoryDescriptor):
        if name.truncation < D:
            raise TruncationError(f"theory {name.name} is truncated at {name.truncation} < {D}")
        return name if name.truncation == D else theory(name.name, D)
    if D < 1:
        raise ArgumentError("truncation must be at least 1")
    if name == "universal":
        return TheoryDescriptor(name, universal_fgl(D), LAZARD_RATIONAL)
    if name == "chow":
        return TheoryDescriptor(name, fgl_additive(INTEGER_ADDITIVE, D), INTEGER_ADDITIVE)
    if name == "ktheory":
        return TheoryDescriptor(name, fgl_multiplicative(LAURENT_MULTIPLICATIVE, D), LAURENT_MULTIPLICATIVE)
    raise ArgumentError(f"unknown theory {name!r}; expected one of {', '.join(THEORIES)}")


def torus_names(r: int) -> tuple:
    return ("t",) if r == 1 else tuple(f"t{k}" for k in range(1, r + 1))


def series_ring(ring: CoefficientRingSpec, names: Sequence[str], degrees: Sequence[int], D: int,
                label: str = "") -> RingPresentation:
    gens = tuple(Generator(n, d, "series") for n, d in zip(names, degrees))
    return RingPresentation(ring, gens, (), D, label)


# torus ---------------------------------------------------------------
@dataclass
class TorusCoefficients:
    r: int
    theory: str
    limit: RingPresentation
    tower: ProRing
    stabilization: dict
    mittag_leffler_failures: list
    stage_ranks: list

    @property
    def ranks(self) -> list:
        return self.limit.ranks()

    @property
    def verified(self) -> bool:
        return not self.mittag_leffler_failures and self.stage_ranks == self.ranks


def torus_stage(ring: CoefficientRingSpec, r: int, i: int, D: int) -> RingPresentation:
    """``coefficients[t_1..t_r] / (t_1^(i-1), ..., t_r^(i-1))``."""
    names = torus_names(r)
    sp = SeriesSpace(ring, tuple((n, 1) for n in names), D)
    rules = tuple(MonicRewrite(n, i - 1, sp.zero()) for n in names)
    gens = tuple(Generator(n, 1, "polynomial") for n in names)
    return RingPresentation(ring, gens, rules, D, f"torus stage {i}")


def torus_tower(ring: CoefficientRingSpec, r: int, D: int, horizon: int | None = None) -> ProRing:
    horizon = D + 3 if horizon is None else horizon
    return ProRing(lambda i: torus_stage(ring, r, i, D), start=1, horizon=horizon, label=f"torus rank {r}")


def torus_coefficients(r: int, theory_name="universal", D: int = 4) -> TorusCoefficients:
    """Series ring on ``r`` degree-1 generators, checked against its tower of truncations."""
    if r < 1:
        raise ArgumentError("torus rank must be at least 1")
    th = theory(theory_name, D)
    names = torus_names(r)
    limit = series_ring(th.ring, names, [1] * r, D, f"torus rank {r} coefficients")
    tower = torus_tower(th.ring, r, D)
    record = tower.stabilization_record(D)
    failures = tower.verify_mittag_leffler(D)
    # past every stabilization index the stage agrees with the limit
    stage_ranks = tower.stage(tower.horizon).ranks()
    return TorusCoefficients(r, th.name, limit, tower, record, failures, stage_ranks)


def trivial_torus_action(base: RingPresentation, r: int, D: int | None = None) -> RingPresentation:
    """Adjoin ``r`` degree-1 series generators to ``base``."""
    if r < 0:
        raise ArgumentError("torus rank must be non-negative")
    D = base.truncation if D is None else D
    if base.relations and base.truncation < D:
        raise TruncationError(f"base is truncated at {base.truncation} < {D}")
    if r == 0:
        return base
    names = torus_names(r)
    clash = [n for n in names if n in base.names]
    if clash:
        raise StructuralError(f"base already has a generator {clash[0]!r}")
    gens = [Generator(n, 1, "series") for n in names]
    return base.adjoin(gens, (), label=f"{base.label or 'base'} with trivial rank-{r} torus", truncation=D)


# projective bundles --------------------------------------------------
def chern_classes_of_sum(roots: Sequence, space: SeriesSpace | None = None) -> list:
    """``[c_0, ..., c_r]`` of a sum of line bundles with the given first Chern classes."""
    roots = list(roots)
    if not roots and space is None:
        raise ArgumentError("an empty root list needs an explicit space")
    sp = space if space is not None else roots[0].space
    roots = [_coerce_root(sp, x, k) for k, x in enumerate(roots)]
    # c_k by the recursion prod (1 + x_j): multiply in one root at a time
    cs = [sp.one()]
    for x in roots:
        cs = [cs[0]] + [cs[k] + cs[k - 1] * x for k in range(1, len(cs))] + [cs[-1] * x]
    return cs


def _coerce_root(sp: SeriesSpace, x, k: int) -> TruncatedSeries:
    if not isinstance(x, TruncatedSeries):
        if x != 0:
            raise GradingError(f"root {k} is a nonzero constant; roots must have degree 1")
        return sp.zero()
    if x.space != sp:
        if x.truncation < sp.truncation:
            raise TruncationError(f"root {k} is truncated below order {sp.truncation}")
        x = x.with_truncation(sp.truncation).embed(sp)
    if x and not x.is_homogeneous():
        w = x.inhomogeneous_witness()
        raise GradingError(f"root {k} = {x} is not homogeneous (offending term {sp.monomial(w[0])})")
    if x and x.degree() != 1:
        raise GradingError(f"root {k} = {x} has degree {x.degree()}, expected 1")
    return x


def projective_bundle(base: RingPresentation, roots: Sequence, D: int | None = None,
                      name: str = "ξ") -> RingPresentation:
    """``base[ξ] / prod_j (ξ - root_j)``, the bundle of lines in a sum of line bundles.

    The relation is stored as the rewrite ``ξ^(r+1) = -sum_{k>=1} (-1)^k c_k ξ^(r+1-k)``
    with ``c_k`` the elementary symmetric functions of the roots.
    """
    roots = list(roots)
    if not roots:
        raise ArgumentError("a projective bundle needs at least one root")
    D = base.truncation if D is None else D
    if base.truncation < D and base.relations:
        raise TruncationError(f"base is truncated at {base.truncation} < {D}")
    if name in base.names:
        raise StructuralError(f"base already has a generator {name!r}")
    bsp = base.space.with_truncation(D)
    cs = chern_classes_of_sum([_root_in(base, bsp, x, k) for k, x in enumerate(roots)], bsp)
    r = len(roots) - 1
    new = base.adjoin([Generator(name, 1, "polynomial")], (), truncation=D)
    sp = new.space
    xi = sp.var(name)
    rhs = sp.zero()
    for k in range(1, r + 2):
        rhs = rhs - cs[k].embed(sp) * xi ** (r + 1 - k) * (-1) ** k
    rule = MonicRewrite(name, r + 1, rhs)
    label = f"P({len(roots)} roots) over {base.label or 'base'}"
    out = RingPresentation(new.ring, new.generators, new.relations + (rule,), D, label)
    if base.strategy == "monic" and not bundle_rank_consistent(base, out, r):
        raise StrategyError("projective bundle is not free of the expected rank over its base")
    return out


def _root_in(base: RingPresentation, bsp: SeriesSpace, x, k: int):
    if isinstance(x, TruncatedSeries) and x.space.names != bsp.names:
        missing = [n for n in x.space.names if n not in bsp.names and x.uses(n)]
        if missing:
            raise StructuralError(f"root {k} uses {missing[0]!r}, not a generator of the base")
    return _coerce_root(bsp, x, k)


def bundle_rank_consistent(base: RingPresentation, bundle: RingPresentation, r: int) -> bool:
    """Degree-``d`` rank of the bundle is ``sum_{j<=min(r,d)} rank_{d-j}(base)`` for a monic base."""
    D = bundle.truncation
    b = [len(base.standard_monomials(d)) for d in range(D + 1)]
    expected = [sum(b[d - j] for j in range(min(r, d) + 1)) for d in range(D + 1)]
    return bundle.ranks() == expected


def weighted_gm_projective(weights: Sequence[int], theory_name="universal", D: int = 4) -> RingPresentation:
    """Projective space with the multiplicative group acting with the given weights."""
    weights = list(weights)
    if not weights:
        raise ArgumentError("need at least one weight")
    th = theory(theory_name, D)
    base = series_ring(th.ring, ("t",), (1,), D, "coefficients[[t]]")
    roots = [n_series(th.law, m, "t") for m in weights]
    p = projective_bundle(base, roots, D)
    ws = ",".join(str(m) for m in weights)
    return RingPresentation(p.ring, p.generators, p.relations, D, f"P({ws}) [{th.name}]")


def bundle_relation(p: RingPresentation, name: str = "ξ") -> TruncatedSeries:
    """The monic relation ``ξ^(r+1) - rhs`` of a projective bundle."""
    for rel in p.relations:
        if isinstance(rel, MonicRewrite) and rel.variable == name:
            return rel.element()
    raise StructuralError(f"no rewrite rule for {name!r}")


# GL_n ----------------------------------------------------------------
@dataclass
class GLnCoefficients:
    n: int
    theory: str
    limit: RingPresentation
    evidence: RingPresentation
    evidence_stage: int
    limit_ranks: list
    evidence_ranks: list
    tower: ProRing = field(repr=False)

    @property
    def consistent(self) -> bool:
        return self.limit_ranks == self.evidence_ranks


def gln_coefficients(n: int, D: int = 4, theory_name="universal", stage: int | None = None) -> GLnCoefficients:
    """Series ring on ``η_1..η_n`` (``deg η_j = j``) with a Grassmannian stage as evidence.

    The default stage ``D + 1`` is deep enough that the Grassmannian agrees
    with the series ring in every degree up to ``D``.
    """
    if n < 1:
        raise ArgumentError("n must be at least 1")
    th = theory(theory_name, D)
    names = tuple(f"η{j}" for j in range(1, n + 1))
    limit = series_ring(th.ring, names, range(1, n + 1), D, f"GL_{n} coefficients")
    i = D + 1 if stage is None else stage
    if i < 1:
        raise ArgumentError("the evidence stage must be at least 1")
    evidence = grassmannian_ring(n, i, D, th.ring)
    tower = ProRing(lambda k: grassmannian_ring(n, k, D, th.ring), start=1, horizon=D + 2,
                    label=f"Gr({n}, {n}+i)")
    return GLnCoefficients(n, th.name, limit, evidence, i, limit.ranks(), evidence.ranks(), tower)


# μ_n -----------------------------------------------------------------
def mu_n_presentation(n: int, theory_name="universal", D: int = 4) -> RingPresentation:
    """``coefficients[[ξ]] / ([n](ξ))`` with ``ξ`` the first Chern class of the tautological bundle."""
    if not isinstance(n, int) or n < 2:
        raise ArgumentError(f"μ_n needs n >= 2, got {n}")
    th = theory(theory_name, D)
    rel = n_series(th.law, n, "ξ")
    return RingPresentation(th.ring, (Generator("ξ", 1, "series"),), (GeneralRelation(rel),), D,
                            f"μ_{n} coefficients [{th.name}]")


def mu_n_coefficients(n: int, theory_name="universal", D: int = 4) -> list:
    """Per-degree reports ``d = 0..D`` of the μ_n coefficient ring.

    Over rational coefficients ``[n](ξ) = ξ * u(ξ)`` with ``u(0) = n`` a unit,
    so the ideal is ``(ξ)``; the reciprocal of ``u`` is computed as a check.
    """
    p = mu_n_presentation(n, theory_name, D)
    if p.ring.is_rational:
        rel = p.relations[0].element
        sp = rel.space
        quotient = sp.from_coefficients({(e - 1,): c for (e,), c in rel.coefficients().items()})
        series_reciprocal(quotient)
    return [p.piece_report(d) for d in range(D + 1)]


# Whitney -------------------------------------------------------------
@dataclass(frozen=True)
class WhitneyReport:
    passed: bool
    degree: int | None = None
    lhs: str | None = None
    rhs: str | None = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "witness_degree": self.degree, "lhs": self.lhs, "rhs": self.rhs}


def whitney_check(roots_a: Sequence, roots_b: Sequence, space: SeriesSpace | None = None) -> WhitneyReport:
    """Compare ``c(A ⊕ B)`` with ``c(A) c(B)`` degree by degree."""
    roots_a, roots_b = list(roots_a), list(roots_b)
    if space is None:
        given = [x for x in roots_a + roots_b if isinstance(x, TruncatedSeries)]
        if not given:
            raise ArgumentError("cannot infer a space from constant roots")
        space = given[0].space
    ca = chern_classes_of_sum(roots_a, space)
    cb = chern_classes_of_sum(roots_b, space)
    cab = chern_classes_of_sum(roots_a + roots_b, space)
    for k, lhs in enumerate(cab):
        rhs = space.zero()
        for j in range(k + 1):
            if j < len(ca) and k - j < len(cb):
                rhs = rhs + ca[j] * cb[k - j]
        if lhs != rhs:
            return WhitneyReport(False, k, str(lhs), str(rhs))
    return WhitneyReport(True)


# restriction ---------------------------------------------------------
@dataclass
class RestrictionReport:
    n: int
    truncation: int
    images: dict
    invariance_failures: list
    degree_ranks: dict  # d -> (rank of image matrix, number of η-monomials)

    @property
    def invariant(self) -> bool:
        return not self.invariance_failures

    @property
    def injective(self) -> bool:
        return all(r == k for r, k in self.degree_ranks.values())

    @property
    def passed(self) -> bool:
        return self.invariant and self.injective

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "truncation": self.truncation,
            "images": {k: str(v) for k, v in self.images.items()},
            "invariant": self.invariant,
            "invariance_failures": [list(f) for f in self.invariance_failures],
            "injective": self.injective,
            "degree_ranks": {str(d): {"rank": r, "monomials": k} for d, (r, k) in self.degree_ranks.items()},
            "passed": self.passed,
        }


def restrict_gln_to_torus(n: int, D: int = 4, theory_name="universal") -> RestrictionReport:
    """The map ``η_j -> e_j(t_1..t_n)``: invariance under swaps and injectivity degree by degree."""
    if n < 1:
        raise ArgumentError("n must be at least 1")
    th = theory(theory_name, D)
    source = gln_coefficients(n, D, th).limit
    target = series_ring(th.ring, torus_names(n), [1] * n, D)
    tsp = target.space
    names = tsp.names
    images = [elementary_symmetric_in(tsp, names, j) for j in range(1, n + 1)]
    failures = []
    for name, img in zip(source.names, images):
        w = symmetry_witness(img, names)
        if w is not None:
            failures.append((name, names[w[0]], names[w[1]]))
    ranks = {}
    for d in range(D + 1):
        basis = monomials_of_order(source.space.weights, d)
        rows = [target.coordinates(source.space.monomial(m).compose(images), d) for m in basis]
        ranks[d] = (rational_rank(rows), len(basis))
    return RestrictionReport(n, D, dict(zip(source.names, images)), failures, ranks)


# specialization ------------------------------------------------------
def specialization_images(to: str):
    """Target ring and generator images sending the generic logarithm to the ``to`` logarithm."""
    if to == "chow":
        return RATIONAL_ADDITIVE, lambda i: RATIONAL_ADDITIVE.zero()
    if to == "ktheory":
        return RATIONAL_MULTIPLICATIVE, lambda i: RATIONAL_MULTIPLICATIVE.beta(i + 1) * Fraction(1, i + 2)
    raise ArgumentError(f"can only specialize to chow or ktheory, not {to!r}")


def specialize_theory(x, to: str):
    """Push a universal series, law or presentation to chow or ktheory, rationally."""
    target, images = specialization_images(to)
    if not hasattr(x, "ring") or x.ring != LAZARD_RATIONAL:
        raise StructuralError(f"specialization starts from {LAZARD_RATIONAL}, got {getattr(x, 'ring', type(x).__name__)}")
    if isinstance(x, FormalGroupLaw):
        return x.specialize(target, images)
    if isinstance(x, RingPresentation):
        return x.specialize(target, images)
    if isinstance(x, TruncatedSeries):
        return coefficient_specialize(x, images, target)
    raise StructuralError(f"cannot specialize {type(x).__name__}")


def reports_json(reports: Sequence[GradedPieceReport]) -> list:
    return [r.to_json() for r in reports]


__all__ = [
    "GLnCoefficients",
    "RestrictionReport",
    "THEORIES",
    "TheoryDescriptor",
    "TorusCoefficients",
    "WhitneyReport",
    "bundle_rank_consistent",
    "bundle_relation",
    "chern_classes_of_sum",
    "gln_coefficients",
    "mu_n_coefficients",
    "mu_n_presentation",
    "projective_bundle",
    "restrict_gln_to_torus",
    "series_ring",
    "specialization_images",
    "specialize_theory",
    "theory",
    "torus_coefficients",
    "torus_names",
    "torus_stage",
    "torus_tower",
    "trivial_torus_action",
    "weighted_gm_projective",
    "whitney_check",
]
