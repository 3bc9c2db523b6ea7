"""Exact derivation and verification of recurrence-sequence identities.

Jordan-algebra identity templates are instantiated with matrix families whose
powers have closed forms in Fibonacci-type sequences; every resulting scalar
identity is checked by exact arithmetic on an integer grid.
"""

from .algebra import (
    DimensionError,
    Matrix,
    Poly,
    X,
    jordan_product,
    mat_det,
    mat_mul,
    mat_pow,
    mat_trace,
    scalar_arith,
    ternary_product,
)
from .catalog import (
    FAMILIES,
    LITERALS,
    NegativeIndexUnsupported,
    SequenceDef,
    builtin,
    closedform_check,
    family,
    family_base,
    family_predicted_power,
    h_value,
    lookup_sequence,
    oeis_crosscheck,
    seq_value,
)
from .jordan import TEMPLATES, derive_report, instantiate_symbolic, template_check_numeric
from .mclaughlin import lucas_via_zbar, pow_via_y, pow_via_z, y_seq, z_seq, zbar_seq

__version__ = "0.1.0"

__all__ = [
    "DimensionError", "Matrix", "Poly", "X",
    "jordan_product", "mat_det", "mat_mul", "mat_pow", "mat_trace", "scalar_arith", "ternary_product",
    "FAMILIES", "LITERALS", "NegativeIndexUnsupported", "SequenceDef", "builtin", "closedform_check",
    "family", "family_base", "family_predicted_power", "h_value", "lookup_sequence", "oeis_crosscheck",
    "seq_value",
    "TEMPLATES", "derive_report", "instantiate_symbolic", "template_check_numeric",
    "lucas_via_zbar", "pow_via_y", "pow_via_z", "y_seq", "z_seq", "zbar_seq",
]
