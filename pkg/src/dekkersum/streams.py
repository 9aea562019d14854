"""Random test streams and the exact big-integer reference sum.

Streams are drawn as uniform bit patterns with large biased exponents
rejected, so no drawn value is non-finite and healthy accumulation runs
stay far from overflow.  The generator is Philox (counter-based,
seedable): equal seeds give bitwise-identical streams.

The reference is the mathematically exact sum, computed by bucketing
integer mantissas per exponent -- strictly more accurate than any
extended-precision substitute, so the observed error needs no reference
error allowance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import backends
from .dekker import ExactValue, Repr, exact_value, round_exact

# Biased-exponent rejection thresholds (patterns with exponent field >= the
# cutoff are discarded; this also removes Inf/NaN).
F32_EXPONENT_CUTOFF = 0b11110111           # 247 of 8 bits
F64_EXPONENT_CUTOFF = 0b11111010 << 3      # top 8 of 11 bits: 2000

PRECISIONS = ("binary32", "binary64")


@dataclass(frozen=True)
class RandomStreamSpec:
    precision: str
    n: int
    seed: int
    exponent_cutoff: int | None = None

    def __post_init__(self) -> None:
        if self.precision not in PRECISIONS:
            raise ValueError(f"precision must be one of {PRECISIONS}")
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        if self.exponent_cutoff is None:
            default = (
                F32_EXPONENT_CUTOFF
                if self.precision == "binary32"
                else F64_EXPONENT_CUTOFF
            )
            object.__setattr__(self, "exponent_cutoff", default)

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(np.float32 if self.precision == "binary32" else np.float64)


def draw_stream(spec: RandomStreamSpec) -> np.ndarray:
    """n floats, uniform over admissible bit patterns, reproducible per seed."""
    rng = np.random.Generator(np.random.Philox(spec.seed))
    if spec.precision == "binary32":
        uint_t, exp_shift, exp_mask = np.uint32, np.uint32(23), np.uint32(0xFF)
    else:
        uint_t, exp_shift, exp_mask = np.uint64, np.uint64(52), np.uint64(0x7FF)
    cutoff = uint_t(spec.exponent_cutoff)

    chunks: list[np.ndarray] = []
    remaining = spec.n
    while remaining > 0:
        # Oversample a little; the rejection rate is small for both cutoffs.
        bits = rng.integers(0, np.iinfo(uint_t).max, size=max(remaining + 64, int(remaining * 1.1)), dtype=uint_t, endpoint=True)
        keep = bits[((bits >> exp_shift) & exp_mask) < cutoff]
        if keep.size > remaining:
            keep = keep[:remaining]
        chunks.append(keep)
        remaining -= keep.size
    bits = np.concatenate(chunks) if chunks else np.empty(0, dtype=uint_t)
    return bits.view(spec.dtype)


# Exponent offset making every binary64 frexp-mantissa exponent nonnegative:
# the smallest is -1074 - 52 = -1126.
_F64_SHIFT = 1126
_N_BUCKETS = 971 + _F64_SHIFT + 1


def exact_sum_array(xs: np.ndarray) -> Fraction:
    """Exact sum of a float32/float64 array as a rational number."""
    xs = np.asarray(xs, dtype=np.float64)  # float32 -> float64 is exact
    if xs.size == 0:
        return Fraction(0)
    if not np.isfinite(xs).all():
        raise ValueError("stream contains non-finite values")
    m, ex = np.frexp(xs)
    mi = (m * 2.0**53).astype(np.int64)        # exact: |m| in [0.5, 1) or 0
    s_e = ex.astype(np.int64) - 53 + _F64_SHIFT
    s_e[mi == 0] = 0
    # Split into 32-bit halves so int64 buckets cannot overflow even for
    # 2**20 addends per bucket: lo < 2**32, count * 2**32 < 2**63.
    if xs.size >= 2**30:
        raise ValueError("array too large for single-pass bucketing")
    lo = mi & np.int64(0xFFFFFFFF)
    hi = mi >> np.int64(32)
    lo_b = np.zeros(_N_BUCKETS, dtype=np.int64)
    hi_b = np.zeros(_N_BUCKETS, dtype=np.int64)
    np.add.at(lo_b, s_e, lo)
    np.add.at(hi_b, s_e, hi)
    total = 0
    for b in np.nonzero(lo_b | hi_b)[0]:
        total += ((int(hi_b[b]) << 32) + int(lo_b[b])) << int(b)
    return Fraction(total, 1 << _F64_SHIFT)


def exact_sum_slow(xs) -> Fraction:
    """Per-element rational accumulation; independent oracle for the above."""
    total = Fraction(0)
    for x in xs:
        total += Fraction(float(x))
    return total


def fraction_to_exact(v: Fraction) -> ExactValue:
    """Convert a dyadic rational to (n, q) with n odd (or zero)."""
    num, den = v.numerator, v.denominator
    if den & (den - 1):
        raise ValueError(f"not a dyadic rational: {v}")
    return exact_value(2, num, -(den.bit_length() - 1))


def round_reference(v: Fraction, precision: str):
    """Nearest working-precision float to an exact dyadic value.

    binary32 goes through the simulated system in one step to avoid the
    double rounding of float() followed by np.float32().
    """
    if precision == "binary64":
        return float(v)  # CPython int/int division is correctly rounded
    r = round_exact(backends.IEEE32, fraction_to_exact(v))
    return np.float32(np.ldexp(np.float64(r.m), r.e))


def repr_from_value(x) -> Repr:
    return backends.repr_from_float(float(x))
