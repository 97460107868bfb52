"""Exact Drazin and group inverses with similarity certificates for AC and BA
under ABA = ACA, over the rationals."""

__version__ = "0.1.0"

from .exact_matrix import Matrix, inverse, mat_pow, rank
from .decomposition import core_nilpotent, index, nilpotent_similarity, unit_regular_factor
from .gen_inverse import drazin, drazin_cline, group_inverse, verify_drazin
from .flanders import (
    FlandersTriple,
    NotSimilar,
    SimilarityCertificate,
    ab_ba_power,
    drazin_similarity_certificate,
    full_similarity,
    group_similarity_certificate,
    power_similarity,
    rank_sequence,
    validate_triple,
)

__all__ = [
    "Matrix", "inverse", "mat_pow", "rank",
    "core_nilpotent", "index", "nilpotent_similarity", "unit_regular_factor",
    "drazin", "drazin_cline", "group_inverse", "verify_drazin",
    "FlandersTriple", "NotSimilar", "SimilarityCertificate", "ab_ba_power",
    "drazin_similarity_certificate", "full_similarity", "group_similarity_certificate",
    "power_similarity", "rank_sequence", "validate_triple",
]
