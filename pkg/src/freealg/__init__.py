"""Exact computations with reduced words, group algebras and their radial
subalgebras, for free products of finite groups and for free groups."""

from .algebra import (
    AlgebraElement,
    RadialVector,
    TensorElement,
    build_radial,
    radial_coordinates,
    radial_expand,
    tensor_of,
    tensor_pow,
    verify_recurrence_w1_wn,
    verify_w1_squared,
)
from .conjugacy import (
    MODE_PLAIN,
    MODE_REDUCED,
    EquationInstance,
    solve_fixed_length,
    verify_uniqueness,
)
from .expectation import (
    defect,
    defect_series,
    expect,
    expect_by_definition,
    k_reduction_check,
    nonzero_criterion,
)
from .groups import (
    FactorTable,
    FreeGroupSpec,
    FreeProductSpec,
    GroupSpec,
    validate_spec,
)
from .io import load_group_spec, parse_word, parse_word_tuple

__all__ = [
    "AlgebraElement",
    "EquationInstance",
    "FactorTable",
    "FreeGroupSpec",
    "FreeProductSpec",
    "GroupSpec",
    "MODE_PLAIN",
    "MODE_REDUCED",
    "RadialVector",
    "TensorElement",
    "build_radial",
    "defect",
    "defect_series",
    "expect",
    "expect_by_definition",
    "k_reduction_check",
    "load_group_spec",
    "nonzero_criterion",
    "parse_word",
    "parse_word_tuple",
    "radial_coordinates",
    "radial_expand",
    "solve_fixed_length",
    "tensor_of",
    "tensor_pow",
    "validate_spec",
    "verify_recurrence_w1_wn",
    "verify_uniqueness",
    "verify_w1_squared",
]

__version__ = "0.1.0"
