"""Ranks and first Chern classes of bundles of VOA coinvariants from fusion data."""

from coinvariants.fusion.engine import averaging_matrix, fa_matrix, fusion_matrix, rank, rank_with_frame
from coinvariants.fusion.spec import FAMatrix, Insertion, VoaSpec

__all__ = [
    "FAMatrix",
    "Insertion",
    "VoaSpec",
    "averaging_matrix",
    "fa_matrix",
    "fusion_matrix",
    "rank",
    "rank_with_frame",
]
