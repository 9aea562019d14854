"""Streaming recursive-summation accumulators, generic over a backend.

Five variants: plain recursive summation, the classic 3-op compensated
form, the unconditional 6-op compensated form, and the double / triple
6-op forms that additionally compensate the compensation step itself.
Addends are consumed strictly in presentation order; there is no sorting
or blocking.
"""

from __future__ import annotations

import enum

from .eft import fast_two_sum, two_sum


class Algorithm(enum.Enum):
    PLAIN = "plain"
    KAHAN3OP = "kahan"
    COMP6OP = "6op"
    DOUBLE6OP = "double6op"
    TRIPLE6OP = "triple6op"


ALGORITHMS_BY_NAME = {a.value: a for a in Algorithm}


class Accumulator:
    """Sequential state machine holding (s, e) for one algorithm.

    Owned by one execution context at a time; distinct accumulators are
    independent.  ``finish`` is non-destructive.
    """

    def __init__(self, algorithm: Algorithm, backend):
        self.algorithm = algorithm
        self.backend = backend
        self.s = backend.zero
        self.e = backend.zero
        self.count = 0

    def add(self, x) -> "Accumulator":
        b = self.backend
        algo = self.algorithm
        if algo is Algorithm.PLAIN:
            self.s = b.add(self.s, x)
        elif algo is Algorithm.KAHAN3OP:
            y = b.add(self.e, x)
            self.s, self.e = fast_two_sum(b, self.s, y)
        elif algo is Algorithm.COMP6OP:
            y = b.add(self.e, x)
            self.s, self.e = two_sum(b, self.s, y)
        elif algo is Algorithm.DOUBLE6OP:
            t, v = two_sum(b, self.s, x)
            w = b.add(self.e, v)
            self.s, self.e = two_sum(b, t, w)
        elif algo is Algorithm.TRIPLE6OP:
            y, u = two_sum(b, self.e, x)
            t, v = two_sum(b, self.s, y)
            w = b.add(u, v)
            self.s, self.e = two_sum(b, t, w)
        else:  # pragma: no cover
            raise ValueError(f"unknown algorithm {algo}")
        self.count += 1
        return self

    def extend(self, xs) -> "Accumulator":
        for x in xs:
            self.add(x)
        return self

    def finish(self):
        return (self.s, self.e)
