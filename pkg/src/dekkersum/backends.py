"""Arithmetic backends: host binary32/binary64 and the simulated system.

A backend supplies add/sub/neg/zero over its own value type.  This is the
only coupling point between the summation algorithms and the number system
they run on.

Host backends assume round-to-nearest-even and no value-changing float
optimizations (no fast-math reassociation) -- compensated arithmetic is
destroyed by reassociation.
"""

from __future__ import annotations

import math

import numpy as np

from .dekker import (
    Repr,
    SystemParams,
    exact_abs_cmp,
    fl_add,
    is_valid_repr,
    repr_to_exact,
)

# Integer-mantissa parameter sets matching the IEEE interchange formats
# (without Inf/NaN): value = m * 2**e with |m| < 2**t.
IEEE32 = SystemParams(beta=2, t=24, emin=-149, emax=104)
IEEE64 = SystemParams(beta=2, t=53, emin=-1074, emax=971)


def repr_from_float(x: float) -> Repr:
    """Exact (mantissa, exponent) decomposition of a finite host float."""
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r}")
    n, d = float(x).as_integer_ratio()
    e = 1 - d.bit_length()
    if n == 0:
        return Repr(0, 0)
    shift = (n & -n).bit_length() - 1
    return Repr(n >> shift, e + shift)


def repr_to_float(r: Repr) -> float:
    return math.ldexp(r.m, r.e)


def repr_in_system(p: SystemParams, x: float) -> Repr:
    """Valid representation of a finite host float within one binary system.

    Trailing-zero stripping can push the exponent above the system's emax
    (e.g. 5581 * 2**105 in the binary32-matching system); shift the
    mantissa back so the representation is admissible.
    """
    if p.beta != 2:
        raise ValueError("host floats map onto binary systems only")
    r = repr_from_float(x)
    if r.m == 0:
        return Repr(0, p.emin)
    if r.e > p.emax:
        r = Repr(r.m << (r.e - p.emax), p.emax)
    if not is_valid_repr(p, r):
        raise ValueError(f"{x!r} is not an element of {p}")
    return r


class HostF64Backend:
    """Native binary64 arithmetic on Python floats."""

    zero = 0.0

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def abs_ge(a, b) -> bool:
        return abs(a) >= abs(b)


class HostF32Backend:
    """binary32 arithmetic via numpy float32 scalars."""

    zero = np.float32(0.0)

    @staticmethod
    def add(a, b):
        return np.float32(a) + np.float32(b)

    @staticmethod
    def sub(a, b):
        return np.float32(a) - np.float32(b)

    @staticmethod
    def neg(a):
        return -np.float32(a)

    @staticmethod
    def abs_ge(a, b) -> bool:
        return abs(np.float32(a)) >= abs(np.float32(b))


class DekkerBackend:
    """Simulated arithmetic on Repr values within one SystemParams."""

    def __init__(self, params: SystemParams, tie: str = "even"):
        self.params = params
        self.tie = tie
        self.zero = Repr(0, params.emin)

    def add(self, a: Repr, b: Repr) -> Repr:
        return fl_add(self.params, a, b, self.tie)

    def sub(self, a: Repr, b: Repr) -> Repr:
        return fl_add(self.params, a, self.neg(b), self.tie)

    def neg(self, a: Repr) -> Repr:
        if not is_valid_repr(self.params, a):
            raise ValueError(f"invalid operand {a}")
        return Repr(-a.m, a.e)

    def abs_ge(self, a: Repr, b: Repr) -> bool:
        return (
            exact_abs_cmp(
                self.params.beta,
                repr_to_exact(self.params.beta, a),
                repr_to_exact(self.params.beta, b),
            )
            >= 0
        )
