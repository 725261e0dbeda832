"""Exact finite-field toolkit for p-ary bent functions, vectorial dual-bent
functions, bent partitions and partial difference sets."""

from __future__ import annotations

from . import constructions, errors, galois, partitions, pds, semifield, spaces, vectorial, walsh
from .constructions import (
    BUILDERS,
    GammaParams,
    build,
    gamma_partition,
    mm_bent,
    secondary_H,
    ternary_family,
    theorem5_H,
)
from .galois import GF, Field
from .partitions import (
    Partition,
    function_from_partition,
    is_bent_partition,
    normal_size_obstruction,
    partition_from_function,
    satisfies_condition_C,
)
from .pds import expected_params, is_pds, pds_via_characters, theorem6_check
from .semifield import Presemifield, dual_star, field_presemifield, transpose_bullet
from .spaces import CycInt, VSpace
from .vectorial import VectorialFunction, check_condition_A
from .walsh import BentKind, PFunction, classify, dual, is_bent, spectrum

__version__ = "0.1.0"

__all__ = [
    "BUILDERS", "BentKind", "CycInt", "Field", "GF", "GammaParams", "PFunction", "Partition",
    "Presemifield", "VSpace", "VectorialFunction", "build", "check_condition_A", "classify",
    "constructions", "dual", "dual_star", "errors", "expected_params", "field_presemifield",
    "function_from_partition", "galois", "gamma_partition", "is_bent", "is_bent_partition", "is_pds",
    "mm_bent", "normal_size_obstruction", "partition_from_function", "partitions", "pds",
    "pds_via_characters", "satisfies_condition_C", "secondary_H", "semifield", "spaces", "spectrum",
    "ternary_family", "theorem5_H", "theorem6_check", "transpose_bullet", "vectorial", "walsh",
]
