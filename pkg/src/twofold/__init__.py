"""Two-fold irreducibility and strict log-convexity of the scaled spectral
radius ``D -> log r(e^D A)`` for nonnegative matrices."""
from .convexity import (EqualityPossible, EqualityWitness, NoWitnessError,
                        StrictlyConvex, certify, construct_witness,
                        convexity_gap, decide_property1, log_radius_scaled,
                        midpoint_convexity_check, verify_similarity)
from .formats import MatrixParseError, format_matrix, load_matrix, parse_matrix
from .generators import GeneratorSpec, generate
from .matrix import (DiagonalParams, NonnegMatrix, PerronPair, SignPattern,
                     convex_combination, scale_exp, sign_pattern)
from .spectral import (ConvergenceError, SpectralConfig, holder_gap,
                       log_convex_combination, perron_pair, spectral_radius)
from .structure import (ReducibleError, StructureReport, classify,
                        frobenius_form, is_chainable, is_fully_indecomposable,
                        is_irreducible, is_primitive, is_two_fold, period)

__version__ = "0.1.0"

__all__ = [
    "EqualityPossible", "EqualityWitness", "NoWitnessError", "StrictlyConvex",
    "certify", "construct_witness", "convexity_gap", "decide_property1",
    "log_radius_scaled", "midpoint_convexity_check", "verify_similarity",
    "MatrixParseError", "format_matrix", "load_matrix", "parse_matrix",
    "GeneratorSpec", "generate",
    "DiagonalParams", "NonnegMatrix", "PerronPair", "SignPattern",
    "convex_combination", "scale_exp", "sign_pattern",
    "ConvergenceError", "SpectralConfig", "holder_gap",
    "log_convex_combination", "perron_pair", "spectral_radius",
    "ReducibleError", "StructureReport", "classify", "frobenius_form",
    "is_chainable", "is_fully_indecomposable", "is_irreducible",
    "is_primitive", "is_two_fold", "period",
]
