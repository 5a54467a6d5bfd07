"""Exact minimum distance of binary linear codes (Brouwer-Zimmermann)."""

from .engine import (
    Bounds,
    DistanceReport,
    EngineConfig,
    STRATEGIES,
    brute_force_distance,
    format_report,
    initial_bounds,
    lower_bound_update,
    minimum_distance,
    parse_report,
)
from .enumeration import (
    EnumerationResult,
    SavedAdditionsStore,
    build_saved_store,
    enumerate_basic,
    enumerate_optimized,
    enumerate_parallel,
    enumerate_saved,
    enumerate_saved_unrolled,
    enumerate_stack,
)
from .gf2 import (
    BitMatrix,
    GammaSet,
    build_gamma_set,
    format_matrix_text,
    parse_matrix_text,
    random_systematic_matrix,
    read_matrix_file,
    reduce_on_columns,
    row_weight,
    row_xor_accumulate,
    write_matrix_file,
)

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "Bounds",
    "DistanceReport",
    "EngineConfig",
    "EnumerationResult",
    "GammaSet",
    "STRATEGIES",
    "SavedAdditionsStore",
    "brute_force_distance",
    "build_gamma_set",
    "build_saved_store",
    "enumerate_basic",
    "enumerate_optimized",
    "enumerate_parallel",
    "enumerate_saved",
    "enumerate_saved_unrolled",
    "enumerate_stack",
    "format_matrix_text",
    "format_report",
    "initial_bounds",
    "lower_bound_update",
    "minimum_distance",
    "parse_matrix_text",
    "parse_report",
    "random_systematic_matrix",
    "read_matrix_file",
    "reduce_on_columns",
    "row_weight",
    "row_xor_accumulate",
    "write_matrix_file",
]
