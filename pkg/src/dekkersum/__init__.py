"""Compensated summation toolkit.

A simulated integer-mantissa floating-point system for exhaustive
verification of rounding and error-free-transformation properties,
production EFT primitives and compensated accumulators over host floats,
closed-form error-bound oracles, and an experiment harness (random
accumulation, worked traces, three-body orbit stability).
"""

from .backends import (
    DekkerBackend,
    HostF32Backend,
    HostF64Backend,
    IEEE32,
    IEEE64,
    repr_from_float,
    repr_to_float,
)
from .bounds import (
    BoundInput,
    BoundNotApplicableError,
    bound_6op_pair,
    bound_6op_s_only,
    bound_compensated,
    bound_for,
    bound_kahan_leading,
    bound_leading,
    bound_plain,
    unit_roundoff,
)
from .dekker import (
    ExactValue,
    Repr,
    SystemParams,
    canonicalize,
    enumerate_numbers,
    exact_sum,
    fl_add,
    round_exact,
)
from .eft import EftResult, fast_two_sum, two_sum
from .streams import RandomStreamSpec, draw_stream, exact_sum_array
from .summation import ALGORITHMS_BY_NAME, Accumulator, Algorithm

__all__ = [
    "ALGORITHMS_BY_NAME",
    "Accumulator",
    "Algorithm",
    "BoundInput",
    "BoundNotApplicableError",
    "DekkerBackend",
    "EftResult",
    "ExactValue",
    "HostF32Backend",
    "HostF64Backend",
    "IEEE32",
    "IEEE64",
    "RandomStreamSpec",
    "Repr",
    "SystemParams",
    "bound_6op_pair",
    "bound_6op_s_only",
    "bound_compensated",
    "bound_for",
    "bound_kahan_leading",
    "bound_leading",
    "bound_plain",
    "canonicalize",
    "draw_stream",
    "enumerate_numbers",
    "exact_sum",
    "exact_sum_array",
    "fast_two_sum",
    "fl_add",
    "repr_from_float",
    "repr_to_float",
    "round_exact",
    "two_sum",
    "unit_roundoff",
]

__version__ = "1.0.0"
