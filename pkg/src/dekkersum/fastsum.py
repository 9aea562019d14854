"""Compiled host-float accumulation for large experiment streams.

Same recurrences as summation.Accumulator, specialized by numba for
float32/float64 arrays.  Compiled without fast-math, so the compensated
arithmetic is not reassociated away.  Bitwise agreement with the pure
Python accumulators is asserted by the test suite.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .summation import Algorithm

_ALGO_IDS = {
    Algorithm.PLAIN: 0,
    Algorithm.KAHAN3OP: 1,
    Algorithm.COMP6OP: 2,
    Algorithm.DOUBLE6OP: 3,
    Algorithm.TRIPLE6OP: 4,
}


@njit(cache=True)
def _accumulate(xs, algo):
    zero = xs.dtype.type(0.0)
    s = zero
    e = zero
    if algo == 0:
        for i in range(xs.shape[0]):
            s = s + xs[i]
    elif algo == 1:
        for i in range(xs.shape[0]):
            y = e + xs[i]
            z = s + y
            w = z - s
            e = y - w
            s = z
    elif algo == 2:
        for i in range(xs.shape[0]):
            y = e + xs[i]
            z = s + y
            w = z - s
            z1 = y - w
            v = w - z
            z2 = s + v
            e = z1 + z2
            s = z
    elif algo == 3:
        for i in range(xs.shape[0]):
            x = xs[i]
            t = s + x
            w0 = t - s
            z1 = x - w0
            v0 = w0 - t
            z2 = s + v0
            v = z1 + z2
            w = e + v
            z = t + w
            w1 = z - t
            y1 = w - w1
            v1 = w1 - z
            y2 = t + v1
            e = y1 + y2
            s = z
    else:
        for i in range(xs.shape[0]):
            x = xs[i]
            y = e + x
            w0 = y - e
            a1 = x - w0
            v0 = w0 - y
            a2 = e + v0
            u = a1 + a2
            t = s + y
            w1 = t - s
            b1 = y - w1
            v1 = w1 - t
            b2 = s + v1
            v = b1 + b2
            w = u + v
            z = t + w
            w2 = z - t
            c1 = w - w2
            v2 = w2 - z
            c2 = t + v2
            e = c1 + c2
            s = z
    return s, e


def accumulate_array(algorithm: Algorithm, xs: np.ndarray):
    """Run one algorithm over a float32/float64 array; returns (s, e) as
    numpy scalars of the array dtype."""
    if xs.dtype not in (np.float32, np.float64):
        raise TypeError(f"unsupported dtype {xs.dtype}")
    s, e = _accumulate(xs, _ALGO_IDS[algorithm])
    return xs.dtype.type(s), xs.dtype.type(e)
