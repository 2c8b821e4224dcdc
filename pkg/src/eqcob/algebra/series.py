"""Truncated multivariate power series with graded coefficients.

A series lives in a :class:`SeriesSpace`: a coefficient ring, an ordered list
of ``(name, degree)`` variables with positive degrees, and a truncation ``D``.
Only monomials whose weighted order ``sum(exponent * degree)`` is at most ``D``
are kept.

Internally the terms are one flat dict ``(variable exponents, coefficient
monomial) -> scalar``; :meth:`TruncatedSeries.coefficient` reassembles the
:class:`GradedCoefficient` attached to a variable monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from operator import add
from typing import Mapping, Sequence

from ..errors import (
    CompositionError,
    GradingError,
    ReciprocalError,
    ReversionError,
    StructuralError,
)
from .rings import (
    CoefficientRingSpec,
    GradedCoefficient,
    clean_terms,
    format_scalar,
    format_term,
    join_terms,
    mono_mul,
    parse_scalar,
    ring_from_name,
    superscript,
)

Variables = tuple  # tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class SeriesSpace:
    """Ring, variables and truncation shared by a family of series."""

    ring: CoefficientRingSpec
    variables: Variables
    truncation: int

    def __post_init__(self):
        vs = tuple((str(n), int(d)) for n, d in self.variables)
        object.__setattr__(self, "variables", vs)
        names = [n for n, _ in vs]
        if len(set(names)) != len(names):
            raise StructuralError(f"duplicate variable names in {names}")
        if any(d <= 0 for _, d in vs):
            raise GradingError("series variables must have positive degree")
        if self.truncation < 0:
            raise StructuralError("truncation must be non-negative")

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.variables)

    @property
    def weights(self) -> tuple:
        return tuple(d for _, d in self.variables)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise StructuralError(f"no variable {name!r} in {self.names}") from None

    def order(self, sexp: tuple) -> int:
        return sum(e * w for e, w in zip(sexp, self.weights))

    def with_truncation(self, D: int) -> SeriesSpace:
        return SeriesSpace(self.ring, self.variables, D)

    def with_ring(self, ring) -> SeriesSpace:
        return SeriesSpace(ring, self.variables, self.truncation)

    def with_variables(self, variables) -> SeriesSpace:
        return SeriesSpace(self.ring, variables, self.truncation)

    # constructors
    def zero(self) -> TruncatedSeries:
        return TruncatedSeries._raw(self, {})

    def one(self) -> TruncatedSeries:
        return self.const(1)

    def const(self, c) -> TruncatedSeries:
        return self.monomial((0,) * self.nvars, c)

    def var(self, name: str) -> TruncatedSeries:
        i = self.index(name)
        sexp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return self.monomial(sexp)

    def vars(self) -> list:
        return [self.var(n) for n in self.names]

    def monomial(self, sexp, c=1) -> TruncatedSeries:
        return TruncatedSeries(self, {tuple(sexp): c})

    def from_coefficients(self, coeffs: Mapping) -> TruncatedSeries:
        return TruncatedSeries(self, coeffs)


def _coeff_of(space: SeriesSpace, c) -> GradedCoefficient:
    if isinstance(c, GradedCoefficient):
        if c.ring != space.ring:
            raise StructuralError(f"ring mismatch: {c.ring} vs {space.ring}")
        return c
    return GradedCoefficient(space.ring, {(): c})


def _series_sort_key(space, sexp):
    return (space.order(sexp), tuple(-e for e in sexp))


class TruncatedSeries:
    """Immutable truncated power series; see the module docstring."""

    __slots__ = ("space", "_terms", "_hash")

    def __init__(self, space: SeriesSpace, coeffs: Mapping | None = None):
        self.space = space
        flat = {}
        n = space.nvars
        for sexp, c in (coeffs or {}).items():
            sexp = tuple(int(e) for e in sexp)
            if len(sexp) != n or any(e < 0 for e in sexp):
                raise StructuralError(f"bad exponent vector {sexp} for variables {space.names}")
            if space.order(sexp) > space.truncation:
                continue
            for cexp, x in _coeff_of(space, c).items():
                key = (sexp, cexp)
                flat[key] = flat.get(key, 0) + x
        self._terms = clean_terms(flat)
        self._hash = None

    @classmethod
    def _raw(cls, space, flat):
        obj = cls.__new__(cls)
        obj.space = space
        obj._terms = flat
        obj._hash = None
        return obj

    # basic accessors -------------------------------------------------
    @property
    def ring(self) -> CoefficientRingSpec:
        return self.space.ring

    @property
    def variables(self) -> Variables:
        return self.space.variables

    @property
    def truncation(self) -> int:
        return self.space.truncation

    def flat_items(self):
        return self._terms.items()

    def coefficients(self) -> dict:
        """Map of variable exponent vector to :class:`GradedCoefficient`, in canonical order."""
        grouped = {}
        for (sexp, cexp), x in self._terms.items():
            grouped.setdefault(sexp, {})[cexp] = x
        keys = sorted(grouped, key=lambda s: _series_sort_key(self.space, s))
        return {s: GradedCoefficient._raw(self.ring, grouped[s]) for s in keys}

    def coefficient(self, sexp) -> GradedCoefficient:
        sexp = tuple(sexp)
        return GradedCoefficient._raw(
            self.ring, {c: x for (s, c), x in self._terms.items() if s == sexp})

    def constant_term(self) -> GradedCoefficient:
        return self.coefficient((0,) * self.space.nvars)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def order(self):
        """Lowest weighted order present, or ``None`` for zero."""
        if not self._terms:
            return None
        return min(self.space.order(s) for s, _ in self._terms)

    def max_order(self):
        if not self._terms:
            return None
        return max(self.space.order(s) for s, _ in self._terms)

    def order_part(self, k: int) -> TruncatedSeries:
        sp = self.space
        return TruncatedSeries._raw(sp, {key: x for key, x in self._terms.items() if sp.order(key[0]) == k})

    def term_degree(self, key) -> int:
        sexp, cexp = key
        return self.space.order(sexp) + self.ring.monomial_degree(cexp)

    def degrees(self) -> set:
        return {self.term_degree(k) for k in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self):
        degs = self.degrees()
        if len(degs) > 1:
            raise GradingError(f"series is not homogeneous (degrees {sorted(degs)})")
        return next(iter(degs)) if degs else None

    def inhomogeneous_witness(self):
        """First term (canonical order) whose degree differs from the leading term's."""
        items = sorted(self._terms, key=lambda k: _series_sort_key(self.space, k[0]))
        if not items:
            return None
        d0 = self.term_degree(items[0])
        for k in items[1:]:
            if self.term_degree(k) != d0:
                return k
        return None

    def variable_exponents(self) -> set:
        return {s for s, _ in self._terms}

    def uses(self, name: str) -> bool:
        i = self.space.index(name)
        return any(s[i] for s, _ in self._terms)

    # structural helpers ----------------------------------------------
    def _check(self, other: TruncatedSeries):
        if self.space != other.space:
            a, b = self.space, other.space
            if a.ring != b.ring:
                raise StructuralError(f"ring mismatch: {a.ring} vs {b.ring}")
            if a.variables != b.variables:
                raise StructuralError(f"variable mismatch: {a.names} vs {b.names}")
            raise StructuralError(f"truncation mismatch: {a.truncation} vs {b.truncation}")

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, (GradedCoefficient, int, Fraction)):
            return self.space.const(other)
        return NotImplemented

    def with_truncation(self, D: int) -> TruncatedSeries:
        sp = self.space.with_truncation(D)
        return TruncatedSeries._raw(sp, {k: x for k, x in self._terms.items() if sp.order(k[0]) <= D})

    def embed(self, space: SeriesSpace) -> TruncatedSeries:
        """Re-express in ``space`` (same ring) whose variables include every variable used here."""
        if space.ring != self.ring:
            raise StructuralError(f"ring mismatch: {self.ring} vs {space.ring}")
        pos = []
        for i, (name, deg) in enumerate(self.variables):
            if name in space.names:
                j = space.index(name)
                if space.weights[j] != deg:
                    raise GradingError(f"variable {name} has degree {deg}, target says {space.weights[j]}")
                pos.append(j)
            else:
                pos.append(None)
        out = {}
        for (sexp, cexp), x in self._terms.items():
            new = [0] * space.nvars
            for i, e in enumerate(sexp):
                if e:
                    if pos[i] is None:
                        raise StructuralError(f"variable {self.variables[i][0]} missing from {space.names}")
                    new[pos[i]] = e
            new = tuple(new)
            if space.order(new) <= space.truncation:
                out[(new, cexp)] = x
        return TruncatedSeries._raw(space, out)

    def rename(self, mapping: Mapping[str, str]) -> TruncatedSeries:
        vs = tuple((mapping.get(n, n), d) for n, d in self.variables)
        return TruncatedSeries._raw(self.space.with_variables(vs), dict(self._terms))

    def permute(self, perm: Sequence[int]) -> TruncatedSeries:
        """Apply a permutation of variable positions: exponent i moves to slot perm[i]."""
        out = {}
        n = self.space.nvars
        for (sexp, cexp), x in self._terms.items():
            new = [0] * n
            for i, e in enumerate(sexp):
                new[perm[i]] = e
            out[(tuple(new), cexp)] = x
        return TruncatedSeries._raw(self.space, out)

    def over(self, ring: CoefficientRingSpec) -> TruncatedSeries:
        """Reinterpret over ``ring`` (e.g. the rationalization), keeping all terms."""
        if ring.rationalization() != self.ring.rationalization():
            raise StructuralError(f"cannot move {self.ring} coefficients to {ring}")
        return TruncatedSeries._raw(self.space.with_ring(ring),
                                    {k: ring.scalar(x) for k, x in self._terms.items()})

    def rationalize(self) -> TruncatedSeries:
        return self.over(self.ring.rationalization())

    # arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return TruncatedSeries._raw(self.space, clean_terms(out))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(self.space, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            x = self.ring.scalar(other)
            if not x:
                return self.space.zero()
            return TruncatedSeries._raw(self.space, clean_terms({k: v * x for k, v in self._terms.items()}))
        if isinstance(other, GradedCoefficient):
            return self._scale(_coeff_of(self.space, other))
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return TruncatedSeries._raw(self.space, _mul_flat(self.space, self._terms, other._terms))
        return NotImplemented

    __rmul__ = __mul__

    def _scale(self, c: GradedCoefficient) -> TruncatedSeries:
        out = {}
        for (sexp, cexp), x in self._terms.items():
            for ce, y in c.items():
                key = (sexp, mono_mul(cexp, ce))
                out[key] = out.get(key, 0) + x * y
        return TruncatedSeries._raw(self.space, clean_terms(out))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise StructuralError("series powers must be non-negative integers")
        out = self.space.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def powers(self, n: int) -> list:
        """``[1, self, self**2, ..., self**n]`` by repeated multiplication."""
        out = [self.space.one()]
        for _ in range(n):
            out.append(out[-1] * self)
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GradedCoefficient)):
            return self == self.space.const(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.space == other.space and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.space, frozenset(self._terms.items())))
        return self._hash

    # composition and inversion -----------------------------------------
    def compose(self, args: Sequence[TruncatedSeries]) -> TruncatedSeries:
        return series_compose(self, args)

    def __call__(self, *args):
        return series_compose(self, list(args))

    def reversion(self) -> TruncatedSeries:
        return series_reversion(self)

    def reciprocal(self) -> TruncatedSeries:
        return series_reciprocal(self)

    def specialize(self, target: CoefficientRingSpec, images) -> TruncatedSeries:
        return coefficient_specialize(self, images, target)

    # output ------------------------------------------------------------
    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"TruncatedSeries({format_series(self)!r}, D={self.truncation})"

    def to_json(self) -> dict:
        return series_to_json(self)


# ---------------------------------------------------------------------------
# kernels

def _mul_flat(space: SeriesSpace, a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    D = space.truncation
    order = space.order
    ga, gb = {}, {}
    for key, x in a.items():
        ga.setdefault(order(key[0]), []).append((key[0], key[1], x))
    for key, x in b.items():
        gb.setdefault(order(key[0]), []).append((key[0], key[1], x))
    out = {}
    get = out.get
    for oa, ta in ga.items():
        for ob, tb in gb.items():
            if oa + ob > D:
                continue
            for sa, ca, xa in ta:
                for sb, cb, xb in tb:
                    key = (tuple(map(add, sa, sb)), mono_mul(ca, cb))
                    out[key] = get(key, 0) + xa * xb
    return clean_terms(out)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    a._check(b)
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    a._check(b)
    return a * b


def series_compose(f: TruncatedSeries, args: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """Substitute ``args[j]`` for the j-th variable of ``f``.

    All arguments share one space (the result's); each must have zero constant
    term and order at least the degree of the variable it replaces, which is
    what makes the result exact up to the target truncation.
    """
    args = list(args)
    if len(args) != f.space.nvars:
        raise CompositionError(f"expected {f.space.nvars} arguments, got {len(args)}")
    if not args:
        return f
    target = args[0].space
    for g in args[1:]:
        args[0]._check(g)
    if target.ring != f.ring:
        raise StructuralError(f"ring mismatch: {f.ring} vs {target.ring}")
    orders = []
    for j, g in enumerate(args):
        if not g.constant_term().is_zero():
            raise CompositionError(f"argument {j} has nonzero constant term {g.constant_term()}")
        o = g.order()
        if o is not None and o < f.space.weights[j]:
            raise CompositionError(
                f"argument {j} has order {o} below the degree {f.space.weights[j]} of {f.space.names[j]}")
        orders.append(o)
    if f.truncation < target.truncation:
        # f is only known to order f.truncation
        raise CompositionError(
            f"cannot compose a series truncated at {f.truncation} into truncation {target.truncation}")
    D = target.truncation

    # drop f-terms that cannot reach order <= D
    terms = []
    for (sexp, cexp), x in f.flat_items():
        low = 0
        dead = False
        for e, o in zip(sexp, orders):
            if e:
                if o is None:
                    dead = True
                    break
                low += e * o
        if not dead and low <= D:
            terms.append((sexp, cexp, x))
    if not terms:
        return target.zero()

    maxexp = [max(t[0][j] for t in terms) for j in range(len(args))]
    powers = [g.powers(m) for g, m in zip(args, maxexp)]

    def rec(level, items):
        if level == len(args):
            c = {}
            for _, cexp, x in items:
                c[cexp] = c.get(cexp, 0) + x
            return target.const(GradedCoefficient._raw(f.ring, clean_terms(c)))
        groups = {}
        for it in items:
            groups.setdefault(it[0][level], []).append(it)
        total = target.zero()
        for e, group in groups.items():
            inner = rec(level + 1, group)
            total = total + (inner if e == 0 else powers[level][e] * inner)
        return total

    return rec(0, terms)


def series_reversion(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of a single-variable series ``c*u + ...`` with ``c`` a unit."""
    sp = f.space
    if sp.nvars != 1:
        raise ReversionError("reversion needs a single-variable series")
    if not f.constant_term().is_zero():
        raise ReversionError("series has a nonzero constant term")
    lin = f.coefficient((1,))
    if not lin.is_unit():
        raise ReversionError(f"linear coefficient {lin} is not a unit in {f.ring}")
    if sp.weights[0] != 1:
        raise ReversionError("reversion is only defined for a degree-1 variable")
    cinv = lin.inverse()
    u = sp.var(sp.names[0])
    higher = f - u * lin
    g = u * cinv
    for _ in range(sp.truncation):
        g_next = (u - higher.compose([g])) * cinv
        if g_next == g:
            break
        g = g_next
    return g


def series_reciprocal(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series whose constant term is a unit."""
    c0 = f.constant_term()
    if not c0.is_unit():
        raise ReciprocalError(f"constant term {c0} is not a unit in {f.ring}")
    cinv = c0.inverse()
    h = f - f.space.const(c0)
    one = f.space.one()
    g = one * cinv
    for _ in range(f.truncation + 1):
        g_next = (one - h * g) * cinv
        if g_next == g:
            break
        g = g_next
    return g


def _image_fn(images, target):
    if callable(images):
        return images
    if isinstance(images, Mapping):
        def fn(i):
            if i in images:
                return images[i]
            raise StructuralError(f"no image given for generator #{i}")
        return fn
    raise StructuralError("images must be a mapping or a callable")


class _Specializer:
    """Applies a generator assignment to coefficient monomials, with memoized powers."""

    def __init__(self, source: CoefficientRingSpec, target: CoefficientRingSpec, images):
        self.source = source
        self.target = target
        self.fn = _image_fn(images, target)
        self._gens = {}
        self._monos = {}

    def gen_image(self, i: int) -> GradedCoefficient:
        if i not in self._gens:
            img = self.fn(i)
            if not isinstance(img, GradedCoefficient):
                img = GradedCoefficient(self.target, {(): img})
            if img.ring != self.target:
                raise StructuralError(f"image of {self.source.generator_name(i)} lies in {img.ring}, "
                                      f"expected {self.target}")
            if not img.is_homogeneous():
                raise GradingError(f"image of {self.source.generator_name(i)} is not homogeneous")
            d = img.degree()
            if d is not None and d != self.source.generator_degree(i):
                raise GradingError(
                    f"{self.source.generator_name(i)} has degree {self.source.generator_degree(i)} "
                    f"but its image {img} has degree {d}")
            self._gens[i] = img
        return self._gens[i]

    def mono_image(self, cexp: tuple) -> GradedCoefficient:
        if cexp not in self._monos:
            out = self.target.one()
            for i, e in enumerate(cexp):
                if e:
                    out = out * (self.gen_image(i) ** e)
            self._monos[cexp] = out
        return self._monos[cexp]

    def coefficient(self, c: GradedCoefficient) -> GradedCoefficient:
        out = self.target.zero()
        for cexp, x in c.items():
            out = out + self.mono_image(cexp) * x
        return out


def coefficient_specialize(x, images, target: CoefficientRingSpec | None = None):
    """Apply the ring morphism determined by ``images`` coefficient-wise.

    ``images`` maps a generator index (0-based; ``t_i`` is index ``i - 1``,
    ``β`` is index 0) to its image, either as a dict or a callable.  Each image
    must be homogeneous of the generator's degree (zero is always allowed).
    """
    if isinstance(x, GradedCoefficient):
        target = target or x.ring
        return _Specializer(x.ring, target, images).coefficient(x)
    if isinstance(x, TruncatedSeries):
        target = target or x.ring
        sp = _Specializer(x.ring, target, images)
        out = {}
        for (sexp, cexp), v in x.flat_items():
            for ce, y in sp.mono_image(cexp).items():
                key = (sexp, ce)
                out[key] = out.get(key, 0) + v * y
        space = x.space.with_ring(target)
        return TruncatedSeries._raw(space, {k: target.scalar(v) for k, v in clean_terms(out).items()})
    raise StructuralError(f"cannot specialize {type(x).__name__}")


# ---------------------------------------------------------------------------
# canonical text and structured forms

def format_variable_monomial(space: SeriesSpace, sexp: tuple) -> str:
    return "".join(n + superscript(e) for (n, _), e in zip(space.variables, sexp) if e)


def format_series(s: TruncatedSeries) -> str:
    parts = []
    ring = s.ring
    for sexp, c in s.coefficients().items():
        mono = format_variable_monomial(s.space, sexp)
        items = c.sorted_items()
        if len(items) == 1:
            cexp, x = items[0]
            parts.append(format_term(x, ring.format_monomial(cexp) + mono))
        else:
            inner = join_terms([format_term(x, ring.format_monomial(e)) for e, x in items])
            parts.append(("+", f"({inner}){mono}" if mono else f"({inner})"))
    return join_terms(parts)


def series_to_json(s: TruncatedSeries) -> dict:
    terms = []
    for sexp, c in s.coefficients().items():
        terms.append({
            "exponents": list(sexp),
            "coefficient": [{"exponents": list(e), "scalar": format_scalar(x)} for e, x in c.sorted_items()],
        })
    return {
        "ring": s.ring.kind.value,
        "variables": [{"name": n, "degree": d} for n, d in s.variables],
        "truncation": s.truncation,
        "terms": terms,
        "text": format_series(s),
    }


def series_from_json(data: dict) -> TruncatedSeries:
    ring = ring_from_name(data["ring"])
    space = SeriesSpace(ring, tuple((v["name"], v["degree"]) for v in data["variables"]), data["truncation"])
    coeffs = {}
    for t in data["terms"]:
        coeffs[tuple(t["exponents"])] = GradedCoefficient(
            ring, {tuple(c["exponents"]): parse_scalar(c["scalar"]) for c in t["coefficient"]})
    return TruncatedSeries(space, coeffs)
