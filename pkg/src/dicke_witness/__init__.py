"""Entanglement witnesses for N-qubit Dicke states and their white-noise robustness."""

__version__ = "0.1.0"

from .dicke import DickeSpec, dicke_vector, max_schmidt_sq, schmidt_coefficients
from .robustness import RobustnessRecord, figure_data, p_crit_generic, p_crit_huber
from .upsilon import prop9_witness, shift_to_witness, upsilon
from .verification import fully_ppt_check
from .witnesses import (
    FAMILIES,
    DiagonalWitness,
    build_witness,
    cor8_witness,
    prop5_witness,
    projective,
    refined_projective,
    thm6_witness,
)

__all__ = [
    "DickeSpec",
    "DiagonalWitness",
    "FAMILIES",
    "RobustnessRecord",
    "build_witness",
    "cor8_witness",
    "dicke_vector",
    "figure_data",
    "fully_ppt_check",
    "max_schmidt_sq",
    "p_crit_generic",
    "p_crit_huber",
    "prop5_witness",
    "prop9_witness",
    "projective",
    "refined_projective",
    "schmidt_coefficients",
    "shift_to_witness",
    "thm6_witness",
    "upsilon",
]
