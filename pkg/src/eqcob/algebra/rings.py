"""Coefficient rings and their graded elements.

Five coefficient rings are supported::

    LazardRational          Q[t_1, t_2, ...]     deg t_i = -i
    IntegerAdditive         Z
    RationalAdditive        Q
    LaurentMultiplicative   Z[b, 1/b]            deg b = -1
    RationalMultiplicative  Q[b, 1/b]            deg b = -1

A coefficient monomial is an exponent tuple over the ring's generators with
trailing zeros stripped, so ``()`` is the unit monomial in every ring and
``(0, 2)`` is ``t_2**2`` in the Lazard ring.  Scalars are ``int`` or
``fractions.Fraction``; integral fractions are always collapsed to ``int`` so
that equal values have a single representation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from ..errors import GradingError, StructuralError

_SUB = str.maketrans("0123456789-", "₀₁₂₃₄₅₆₇₈₉₋")
_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def superscript(n: int) -> str:
    return "" if n == 1 else str(n).translate(_SUP)


def subscript(n: int) -> str:
    return str(n).translate(_SUB)


class RingKind(enum.Enum):
    LAZARD_RATIONAL = "LazardRational"
    INTEGER_ADDITIVE = "IntegerAdditive"
    LAURENT_MULTIPLICATIVE = "LaurentMultiplicative"
    RATIONAL_ADDITIVE = "RationalAdditive"
    RATIONAL_MULTIPLICATIVE = "RationalMultiplicative"


_RATIONAL = {RingKind.LAZARD_RATIONAL, RingKind.RATIONAL_ADDITIVE, RingKind.RATIONAL_MULTIPLICATIVE}
_BETA = {RingKind.LAURENT_MULTIPLICATIVE, RingKind.RATIONAL_MULTIPLICATIVE}


def normalize_scalar(x):
    """Collapse an exact scalar to ``int`` when it is integral."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return normalize_scalar(Fraction(x.numerator, x.denominator))
    raise StructuralError(f"not an exact scalar: {x!r}")


def format_scalar(x) -> str:
    x = normalize_scalar(x)
    return str(x)


def parse_scalar(text: str):
    return normalize_scalar(Fraction(text))


def mono_mul(a: tuple, b: tuple) -> tuple:
    """Product of two stripped coefficient monomials."""
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, e in enumerate(b):
        out[i] += e
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def strip(exps) -> tuple:
    out = list(exps)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class CoefficientRingSpec:
    """Descriptor of one of the supported graded coefficient rings."""

    kind: RingKind

    @property
    def is_rational(self) -> bool:
        return self.kind in _RATIONAL

    @property
    def has_beta(self) -> bool:
        return self.kind in _BETA

    @property
    def is_lazard(self) -> bool:
        return self.kind is RingKind.LAZARD_RATIONAL

    @property
    def has_generators(self) -> bool:
        return self.is_lazard or self.has_beta

    def generators(self, count: int | None = None) -> list[tuple[str, int]]:
        """``(name, degree)`` pairs; the Lazard ring lists its first ``count`` t_i."""
        if self.is_lazard:
            return [(self.generator_name(i), -(i + 1)) for i in range(count or 0)]
        if self.has_beta:
            return [("β", -1)]
        return []

    def generator_name(self, index: int) -> str:
        if self.is_lazard:
            return "t" + subscript(index + 1)
        if self.has_beta and index == 0:
            return "β"
        raise StructuralError(f"{self.kind.value} has no generator #{index}")

    def generator_degree(self, index: int) -> int:
        if self.is_lazard:
            return -(index + 1)
        if self.has_beta and index == 0:
            return -1
        raise StructuralError(f"{self.kind.value} has no generator #{index}")

    def monomial_degree(self, exps: tuple) -> int:
        if self.is_lazard:
            return -sum((i + 1) * e for i, e in enumerate(exps))
        if self.has_beta:
            return -exps[0] if exps else 0
        return 0

    def check_monomial(self, exps: tuple) -> tuple:
        exps = strip(exps)
        if not exps:
            return exps
        if self.has_beta:
            if len(exps) != 1:
                raise StructuralError(f"{self.kind.value} has a single generator β")
            return exps
        if self.is_lazard:
            if any(e < 0 for e in exps):
                raise StructuralError("only β may carry negative exponents")
            return exps
        raise StructuralError(f"{self.kind.value} has no generators")

    def scalar(self, x):
        x = normalize_scalar(x)
        if not self.is_rational and not isinstance(x, int):
            raise StructuralError(f"non-integral scalar {x} in {self.kind.value}")
        return x

    def rationalization(self) -> CoefficientRingSpec:
        return {
            RingKind.INTEGER_ADDITIVE: RATIONAL_ADDITIVE,
            RingKind.LAURENT_MULTIPLICATIVE: RATIONAL_MULTIPLICATIVE,
        }.get(self.kind, self)

    def monomial_is_unit(self, exps: tuple) -> bool:
        return not exps or self.has_beta

    def scalar_is_unit(self, x) -> bool:
        if x == 0:
            return False
        return self.is_rational or x in (1, -1)

    # element constructors
    def zero(self) -> GradedCoefficient:
        return GradedCoefficient(self, {})

    def one(self) -> GradedCoefficient:
        return GradedCoefficient(self, {(): 1})

    def const(self, x) -> GradedCoefficient:
        return GradedCoefficient(self, {(): x})

    def gen(self, index: int, power: int = 1) -> GradedCoefficient:
        self.generator_degree(index)
        exps = (0,) * index + (power,)
        return GradedCoefficient(self, {exps: 1})

    def t(self, i: int, power: int = 1) -> GradedCoefficient:
        """The Lazard generator t_i (1-based)."""
        if not self.is_lazard:
            raise StructuralError("t_i only exists in LazardRational")
        return self.gen(i - 1, power)

    def beta(self, power: int = 1) -> GradedCoefficient:
        if not self.has_beta:
            raise StructuralError(f"{self.kind.value} has no β")
        return self.gen(0, power)

    def format_monomial(self, exps: tuple) -> str:
        return "".join(self.generator_name(i) + superscript(e) for i, e in enumerate(exps) if e)

    def __str__(self):
        return self.kind.value


LAZARD_RATIONAL = CoefficientRingSpec(RingKind.LAZARD_RATIONAL)
INTEGER_ADDITIVE = CoefficientRingSpec(RingKind.INTEGER_ADDITIVE)
RATIONAL_ADDITIVE = CoefficientRingSpec(RingKind.RATIONAL_ADDITIVE)
LAURENT_MULTIPLICATIVE = CoefficientRingSpec(RingKind.LAURENT_MULTIPLICATIVE)
RATIONAL_MULTIPLICATIVE = CoefficientRingSpec(RingKind.RATIONAL_MULTIPLICATIVE)


def ring_from_name(name: str) -> CoefficientRingSpec:
    try:
        return CoefficientRingSpec(RingKind(name))
    except ValueError:
        raise StructuralError(f"unknown coefficient ring {name!r}") from None


def clean_terms(terms: dict) -> dict:
    """Drop zero entries and collapse integral fractions, in place-free style."""
    out = {}
    for k, v in terms.items():
        if v:
            out[k] = normalize_scalar(v)
    return out


def _coeff_sort_key(ring, exps):
    if ring.has_beta:
        return (exps[0] if exps else 0,)
    weight = sum((i + 1) * e for i, e in enumerate(exps))
    return (weight, tuple(-e for e in exps) + (0,) * 16)


class GradedCoefficient:
    """Sparse polynomial in the coefficient ring's generators."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: CoefficientRingSpec, terms: dict | None = None):
        self.ring = ring
        out = {}
        for exps, x in (terms or {}).items():
            exps = ring.check_monomial(tuple(exps))
            x = ring.scalar(x)
            if x:
                out[exps] = ring.scalar(out.get(exps, 0) + x)
                if not out[exps]:
                    del out[exps]
        self._terms = out
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: _coeff_sort_key(self.ring, kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degrees(self) -> set:
        return {self.ring.monomial_degree(e) for e in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self):
        """Degree of a homogeneous element; ``None`` for zero."""
        degs = self.degrees()
        if len(degs) > 1:
            raise GradingError(f"{self} is not homogeneous")
        return next(iter(degs)) if degs else None

    def constant(self):
        return self._terms.get((), 0)

    def is_scalar(self) -> bool:
        return all(not e for e in self._terms)

    def is_unit(self) -> bool:
        if len(self._terms) != 1:
            return False
        (exps, x), = self._terms.items()
        return self.ring.monomial_is_unit(exps) and self.ring.scalar_is_unit(x)

    def inverse(self) -> GradedCoefficient:
        if not self.is_unit():
            raise StructuralError(f"{self} is not a unit in {self.ring}")
        (exps, x), = self._terms.items()
        inv = Fraction(1) / x if self.ring.is_rational else x
        return GradedCoefficient._raw(self.ring, {tuple(-e for e in exps): normalize_scalar(inv)})

    def _coerce(self, other):
        if isinstance(other, GradedCoefficient):
            if other.ring != self.ring:
                raise StructuralError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return GradedCoefficient(self.ring, {(): other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return GradedCoefficient._raw(self.ring, clean_terms(out))

    __radd__ = __add__

    def __neg__(self):
        return GradedCoefficient._raw(self.ring, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for ka, va in self._terms.items():
            for kb, vb in other._terms.items():
                k = mono_mul(ka, kb)
                out[k] = out.get(k, 0) + va * vb
        return GradedCoefficient._raw(self.ring, clean_terms(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(): normalize_scalar(other)} if other else {})
        if not isinstance(other, GradedCoefficient):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_coefficient(self)

    def __repr__(self):
        return f"GradedCoefficient({self.ring.kind.value}, {format_coefficient(self)!r})"


def format_term(scalar, mono: str) -> tuple[str, str]:
    """Split a signed scalar times a monomial string into (sign, body)."""
    sign = "-" if scalar < 0 else "+"
    mag = -scalar if scalar < 0 else scalar
    if not mono:
        return sign, format_scalar(mag)
    if mag == 1:
        return sign, mono
    if isinstance(mag, Fraction):
        return sign, f"({mag}){mono}"
    return sign, f"{mag}{mono}"


def join_terms(parts: list[tuple[str, str]]) -> str:
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_coefficient(c: GradedCoefficient) -> str:
    return join_terms([format_term(x, c.ring.format_monomial(e)) for e, x in c.sorted_items()])
