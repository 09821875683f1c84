"""Reference conformal data: characters, S-matrices, twisted partition functions."""

from .characters import (
    CharacterTable,
    character_coeffs,
    character_series,
    character_table,
    kac_weight,
    minimal_central_charge,
)
from .data import (
    FIB_OBJECTS,
    SU24_OBJECTS,
    TCI_FIELD_FACTORS,
    TwistMatrixSet,
    expected_entropy,
    s_matrix,
    twist_matrices,
    twist_matrix,
)
from .match import MatchReport, match_spectrum, pair_content

__all__ = [
    "CharacterTable",
    "character_coeffs",
    "character_series",
    "character_table",
    "kac_weight",
    "minimal_central_charge",
    "FIB_OBJECTS",
    "SU24_OBJECTS",
    "TCI_FIELD_FACTORS",
    "TwistMatrixSet",
    "expected_entropy",
    "s_matrix",
    "twist_matrices",
    "twist_matrix",
    "MatchReport",
    "match_spectrum",
    "pair_content",
]
