"""Exact coefficient rings and truncated graded power series."""

from .rings import (
    INTEGER_ADDITIVE,
    LAURENT_MULTIPLICATIVE,
    LAZARD_RATIONAL,
    RATIONAL_ADDITIVE,
    RATIONAL_MULTIPLICATIVE,
    CoefficientRingSpec,
    GradedCoefficient,
    RingKind,
    ring_from_name,
)
from .series import (
    SeriesSpace,
    TruncatedSeries,
    coefficient_specialize,
    format_series,
    series_add,
    series_compose,
    series_from_json,
    series_mul,
    series_reciprocal,
    series_reversion,
    series_to_json,
)

__all__ = [
    "INTEGER_ADDITIVE",
    "LAURENT_MULTIPLICATIVE",
    "LAZARD_RATIONAL",
    "RATIONAL_ADDITIVE",
    "RATIONAL_MULTIPLICATIVE",
    "CoefficientRingSpec",
    "GradedCoefficient",
    "RingKind",
    "SeriesSpace",
    "TruncatedSeries",
    "coefficient_specialize",
    "format_series",
    "ring_from_name",
    "series_add",
    "series_compose",
    "series_from_json",
    "series_mul",
    "series_reciprocal",
    "series_reversion",
    "series_to_json",
]
