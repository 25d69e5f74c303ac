"""Exact period analysis of the Hadamard walk on cycle graphs."""

from .exact import DyadicRational, ExactMatrix, ExactScalar
from .kernels import backend
from .measures import period_average, time_averaged_measure, tv_distance_to_uniform
from .parity import b_matrix, periodicity_obstruction, verify_path_symmetry
from .period import (
    ClassicalWalkSpec,
    InconsistentVerdict,
    PeriodResult,
    char_poly,
    classical_period,
    classify_all,
    period_brute_force,
    period_spectral,
)
from .poly import IntPolynomial, cyclotomic, strip_cyclotomic_factors
from .pqrs import decompose_block, enumerate_words, pqrs_product, reduce_word
from .walk import Coin, WalkState, evolve, hadamard_coin, hadamard_walk, measure

__version__ = "0.1.0"

__all__ = [
    "ClassicalWalkSpec", "Coin", "DyadicRational", "ExactMatrix", "ExactScalar",
    "InconsistentVerdict", "IntPolynomial", "PeriodResult", "WalkState",
    "b_matrix", "backend", "char_poly", "classical_period", "classify_all",
    "cyclotomic", "decompose_block", "enumerate_words", "evolve", "hadamard_coin",
    "hadamard_walk", "measure", "period_average", "period_brute_force",
    "period_spectral", "periodicity_obstruction", "pqrs_product", "reduce_word",
    "strip_cyclotomic_factors", "time_averaged_measure", "tv_distance_to_uniform",
    "verify_path_symmetry",
]  # fmt: skip
