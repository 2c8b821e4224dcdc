"""Graded presentations, normal forms, towers and symmetric-function helpers."""

from .linalg import integer_left_kernel, quotient_invariants, rational_rank, smith_normal_form
from .presentation import (
    GeneralRelation,
    GradedPiece,
    GradedPieceReport,
    Generator,
    MonicRewrite,
    RingPresentation,
    SubringEmbedding,
    monomials_of_order,
    polynomial_ring,
)
from .symmetric import (
    complete_homogeneous,
    elementary_symmetric_in,
    express_symmetric,
    flag_ring,
    grassmannian_ring,
    symmetric_elementary,
    symmetry_witness,
)
from .tower import ProRing, pro_stabilize


def monic_reduce(p: RingPresentation, x):
    """Normal form of ``x`` in a presentation whose relations are all rewrites."""
    return p.reduce(x)


def graded_piece_snf(p: RingPresentation, d: int) -> GradedPieceReport:
    """Invariant factors (or rational rank) of the degree-``d`` piece of ``p``."""
    return p.piece_report(d)


__all__ = [
    "GeneralRelation",
    "GradedPiece",
    "GradedPieceReport",
    "Generator",
    "MonicRewrite",
    "ProRing",
    "RingPresentation",
    "SubringEmbedding",
    "complete_homogeneous",
    "elementary_symmetric_in",
    "express_symmetric",
    "flag_ring",
    "graded_piece_snf",
    "grassmannian_ring",
    "integer_left_kernel",
    "monic_reduce",
    "monomials_of_order",
    "polynomial_ring",
    "pro_stabilize",
    "quotient_invariants",
    "rational_rank",
    "smith_normal_form",
    "symmetric_elementary",
    "symmetry_witness",
]
