"""Error-free transformations over addition.

Both variants return (z, zz) with z the rounded sum and zz the residual;
under the stated conditions z + zz == x + y exactly.  The 3-operation
variant requires the operands to admit representations with
e(x) >= e(y); the 6-operation variant holds unconditionally (on the
simulated backend, even through clipping overflow).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class EftResult:
    z: Any
    zz: Any

    def __iter__(self):
        return iter((self.z, self.zz))


def fast_two_sum(backend, x, y, check: bool = False) -> EftResult:
    """3-op transform: exact when x, y admit exponents e(x) >= e(y).

    The precondition is deliberately not enforced; misuse silently degrades
    zz (e.g. swapping a large y in front yields zz == 0).  Passing
    ``check=True`` asserts |x| >= |y|, which is sufficient but stricter
    than necessary.
    """
    if check:
        assert backend.abs_ge(x, y), "fast_two_sum called with |x| < |y|"
    z = backend.add(x, y)
    w = backend.sub(z, x)
    zz = backend.sub(y, w)
    return EftResult(z, zz)


def two_sum(backend, x, y) -> EftResult:
    """6-op transform: exact for all operand pairs (absent host overflow)."""
    z = backend.add(x, y)
    w = backend.sub(z, x)
    z1 = backend.sub(y, w)
    v = backend.sub(w, z)
    z2 = backend.add(x, v)
    zz = backend.add(z1, z2)
    return EftResult(z, zz)
