"""Formal group laws over the supported coefficient rings.

Laws are stored as truncated two-variable series ``F(u, v)``.  The universal
law is built over ``Q[t_1, t_2, ...]`` from the logarithm

    log(u) = u + t_1 u^2 + t_2 u^3 + ...        (deg t_i = -i)

so every ``t_i`` is a free rational parameter; the additive and
multiplicative laws are available integrally as well.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from dataclasses import dataclass, field

from .algebra.rings import (
    INTEGER_ADDITIVE,
    LAZARD_RATIONAL,
    CoefficientRingSpec,
    GradedCoefficient,
)
from .algebra.series import SeriesSpace, TruncatedSeries, coefficient_specialize, series_reversion
from .errors import CompositionError, GradingError, StructuralError, TwistingError


def one_var_space(ring, D, name="u") -> SeriesSpace:
    return SeriesSpace(ring, ((name, 1),), D)


def two_var_space(ring, D) -> SeriesSpace:
    return SeriesSpace(ring, (("u", 1), ("v", 1)), D)


@dataclass(frozen=True, eq=False)
class FormalGroupLaw:
    """A two-variable series ``F(u, v)`` plus, over rational rings, its logarithm."""

    F: TruncatedSeries
    log: TruncatedSeries | None = None
    kind: str = "custom"
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        if self.F.space.names != ("u", "v") or self.F.space.weights != (1, 1):
            raise StructuralError("a formal group law is a series in u, v of degree 1")
        if self.log is not None:
            if self.log.space != one_var_space(self.ring, self.truncation):
                raise StructuralError("log must be a series in u over the law's ring and truncation")

    @property
    def ring(self) -> CoefficientRingSpec:
        return self.F.ring

    @property
    def truncation(self) -> int:
        return self.F.truncation

    def exp(self) -> TruncatedSeries:
        if self.log is None:
            raise StructuralError("this law carries no logarithm")
        return self._memo("exp", lambda: series_reversion(self.log))

    def __call__(self, a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
        return fgl_sum(self, a, b)

    def __eq__(self, other):
        if not isinstance(other, FormalGroupLaw):
            return NotImplemented
        return self.F == other.F and self.log == other.log

    def __hash__(self):
        return hash((self.F, self.log))

    def _memo(self, key, compute):
        # pure memo: a racing duplicate computation yields the same value
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = compute()
        with self._lock:
            return self._cache.setdefault(key, value)

    def specialize(self, target: CoefficientRingSpec, images) -> FormalGroupLaw:
        F = coefficient_specialize(self.F, images, target)
        log = coefficient_specialize(self.log, images, target) if self.log is not None else None
        if log is not None and not target.is_rational:
            log = None
        return FormalGroupLaw(F, log, kind=f"{self.kind}|specialized")

    def to_json(self) -> dict:
        out = {"kind": self.kind, "F": self.F.to_json()}
        if self.log is not None:
            out["log"] = self.log.to_json()
        return out


def universal_log(D: int) -> TruncatedSeries:
    """``u + sum_{i=1}^{D-1} t_i u^{i+1}`` over the rational Lazard ring."""
    sp = one_var_space(LAZARD_RATIONAL, D)
    coeffs = {(1,): 1}
    for i in range(1, D):
        coeffs[(i + 1,)] = LAZARD_RATIONAL.t(i)
    return sp.from_coefficients(coeffs)


def fgl_additive(ring: CoefficientRingSpec = INTEGER_ADDITIVE, D: int = 4) -> FormalGroupLaw:
    sp = two_var_space(ring, D)
    u, v = sp.vars()
    log = one_var_space(ring, D).var("u") if ring.is_rational else None
    return FormalGroupLaw(u + v, log, kind="additive")


def fgl_multiplicative(ring: CoefficientRingSpec, D: int = 4) -> FormalGroupLaw:
    """``u + v - βuv``; over the rational Laurent ring the log ``-ln(1 - βu)/β`` is attached."""
    if not ring.has_beta:
        raise StructuralError(f"the multiplicative law needs β; {ring} has none")
    sp = two_var_space(ring, D)
    u, v = sp.vars()
    F = u + v - u * v * ring.beta()
    log = None
    if ring.is_rational:
        lsp = one_var_space(ring, D)
        log = lsp.from_coefficients({(i,): ring.beta(i - 1) * Fraction(1, i) for i in range(1, D + 1)})
    return FormalGroupLaw(F, log, kind="multiplicative")


def fgl_from_log(log: TruncatedSeries, D: int | None = None) -> FormalGroupLaw:
    """``F(u, v) = exp(log u + log v)`` with ``exp`` the compositional inverse of ``log``."""
    D = log.truncation if D is None else D
    if not log.ring.is_rational:
        raise StructuralError("a logarithm needs a rational coefficient ring")
    if log.truncation < D:
        raise StructuralError(f"log is only known to order {log.truncation} < {D}")
    log = log.with_truncation(D)
    if log.space.names != ("u",):
        log = log.rename({log.space.names[0]: "u"})
    exp = series_reversion(log)
    sp = two_var_space(log.ring, D)
    s = log.embed(sp) + log.rename({"u": "v"}).embed(sp)
    law = FormalGroupLaw(exp.compose([s]), log, kind="from_log")
    law._cache["exp"] = exp
    return law


def universal_fgl(D: int) -> FormalGroupLaw:
    law = fgl_from_log(universal_log(D), D)
    return FormalGroupLaw(law.F, law.log, kind="universal", _cache=dict(law._cache))


def fgl_sum(law: FormalGroupLaw, a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """``F(a, b)``: the first Chern class of a tensor product from those of the factors."""
    return law.F.compose([a, b])


def formal_inverse(law: FormalGroupLaw, name: str = "t") -> TruncatedSeries:
    """``ι(t)`` with ``F(t, ι(t)) = 0``, solved one order at a time."""

    def compute():
        sp = one_var_space(law.ring, law.truncation, name)
        t = sp.var(name)
        iota = -t
        for _ in range(law.truncation):
            nxt = iota - law.F.compose([t, iota])
            if nxt == iota:
                break
            iota = nxt
        return iota

    return law._memo(("inverse", name), compute)


def n_series(law: FormalGroupLaw, n: int, name: str = "t") -> TruncatedSeries:
    """The n-fold formal sum ``[n](t)``; negative ``n`` goes through ``[n] ∘ ι``."""
    if not isinstance(n, int):
        raise TypeError("n must be an integer")

    def compute():
        sp = one_var_space(law.ring, law.truncation, name)
        t = sp.var(name)
        if n == 0:
            return sp.zero()
        if n == 1:
            return t
        if n < 0:
            return n_series(law, -n, name).compose([formal_inverse(law, name)])
        return law.F.compose([t, n_series(law, n - 1, name)])

    return law._memo(("nseries", n, name), compute)


def fgl_conjugate(law: FormalGroupLaw, phi: TruncatedSeries) -> FormalGroupLaw:
    """``F^φ(u, v) = φ(F(φ⁻¹u, φ⁻¹v))``; the logarithm, if any, becomes ``log ∘ φ⁻¹``."""
    if phi.space.nvars != 1:
        raise StructuralError("φ must be a single-variable series")
    if phi.ring != law.ring:
        raise StructuralError(f"ring mismatch: {phi.ring} vs {law.ring}")
    phi = phi.with_truncation(law.truncation).rename({phi.space.names[0]: "u"})
    inv = series_reversion(phi)
    sp = law.F.space
    a = inv.embed(sp)
    b = inv.rename({"u": "v"}).embed(sp)
    F = phi.compose([law.F.compose([a, b])])
    log = law.log.compose([inv]) if law.log is not None else None
    return FormalGroupLaw(F, log, kind=f"{law.kind}^φ")


def todd_inverse_operator(tau, x: TruncatedSeries) -> TruncatedSeries:
    """``sum_i tau_i x^i`` for a first Chern class ``x``."""
    tau = [c if isinstance(c, GradedCoefficient) else GradedCoefficient(x.ring, {(): c}) for c in tau]
    if not tau or not tau[0].is_unit():
        raise TwistingError(f"tau_0 = {tau[0] if tau else 'missing'} is not a unit")
    for i, c in enumerate(tau):
        if c.ring != x.ring:
            raise StructuralError(f"tau_{i} lies in {c.ring}, expected {x.ring}")
        if not c.is_homogeneous() or (c and c.degree() != -i):
            raise GradingError(f"tau_{i} = {c} is not homogeneous of degree {-i}")
    if not x.constant_term().is_zero():
        raise CompositionError("the operator is evaluated on a class with zero constant term")
    out = x.space.zero()
    power = x.space.one()
    for i, c in enumerate(tau):
        if i:
            power = power * x
            if power.is_zero():
                break
        out = out + power * c
    return out


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    witness: str | None = None


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"passed": self.passed,
                "checks": [{"name": c.name, "passed": c.passed, "witness": c.witness} for c in self.checks]}


def _first_difference(a: TruncatedSeries, b: TruncatedSeries):
    diff = a - b
    if diff.is_zero():
        return None
    sexp, c = next(iter(diff.coefficients().items()))
    mono = diff.space.monomial(sexp, c)
    return str(mono)


def fgl_verify_axioms(law: FormalGroupLaw) -> AxiomReport:
    """Check unit, commutativity, associativity and homogeneity up to truncation.

    Failures are reported with the lowest differing monomial, never raised.
    """
    F = law.F
    sp = F.space
    u, v = sp.vars()
    zero = sp.zero()
    checks = [
        AxiomCheck("unit_left", *_check(F.compose([u, zero]), u)),
        AxiomCheck("unit_right", *_check(F.compose([zero, v]), v)),
        AxiomCheck("commutativity", *_check(F.compose([v, u]), F)),
    ]
    sp3 = SeriesSpace(law.ring, (("u", 1), ("v", 1), ("w", 1)), law.truncation)
    x, y, z = sp3.vars()
    left = F.compose([F.compose([x, y]), z])
    right = F.compose([x, F.compose([y, z])])
    checks.append(AxiomCheck("associativity", *_check(left, right)))
    bad = F.inhomogeneous_witness()
    if bad is None and F and F.degree() != 1:
        bad = next(iter(F.flat_items()))[0]
    witness = None
    if bad is not None:
        sexp, cexp = bad
        witness = str(sp.monomial(sexp, GradedCoefficient(law.ring, {cexp: 1})))
    checks.append(AxiomCheck("homogeneity", bad is None, witness))
    if law.log is not None:
        exp = law.exp()
        s = law.log.embed(sp) + law.log.rename({"u": "v"}).embed(sp)
        checks.append(AxiomCheck("logarithm", *_check(exp.compose([s]), F)))
    return AxiomReport(tuple(checks))


def _check(a, b):
    w = _first_difference(a, b)
    return w is None, w
