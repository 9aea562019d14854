"""Closed-form error-bound oracles for the five summation algorithms.

All bounds are evaluated in exact rational arithmetic (Fraction), so the
oracle itself contributes no rounding error at all.  Inapplicable bounds
(precondition violated) raise BoundNotApplicableError rather than
returning a saturated value: a caller in validation mode must know the
bound does not apply, not get a loose one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .summation import Algorithm

RationalLike = Fraction | int


class BoundNotApplicableError(ValueError):
    """The bound's precondition (n*eps < 1 or n*sigma < 1) is violated."""


def unit_roundoff(beta: int, t: int) -> Fraction:
    """eps = beta**(1-t) / 2, the maximum relative error of nearest rounding."""
    return Fraction(beta, 2 * beta**t)


@dataclass(frozen=True)
class BoundInput:
    n: int
    eps: Fraction
    sum_abs: Fraction
    abs_sum: Fraction | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "eps", Fraction(self.eps))
        object.__setattr__(self, "sum_abs", Fraction(self.sum_abs))
        if self.abs_sum is not None:
            object.__setattr__(self, "abs_sum", Fraction(self.abs_sum))
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 < self.eps <= Fraction(1, 2):
            raise ValueError(f"eps must be in (0, 1/2], got {self.eps}")
        if self.abs_sum is not None and not self.sum_abs >= self.abs_sum >= 0:
            raise ValueError("need sum_abs >= abs_sum >= 0")


@dataclass(frozen=True)
class SigmaTau:
    """Per-step product perturbation bound and per-addend perturbation bound."""

    sigma: Fraction
    tau: Fraction


def sigma_tau(kind: Algorithm, eps: Fraction) -> SigmaTau:
    if kind is Algorithm.DOUBLE6OP:
        return SigmaTau(sigma=2 * eps**2 + eps**3, tau=eps**2)
    if kind is Algorithm.TRIPLE6OP:
        return SigmaTau(sigma=eps**2 + eps**3 + eps**4, tau=2 * eps**2 + eps**3)
    raise ValueError(f"no sigma/tau for {kind}")


def bound_plain(b: BoundInput) -> Fraction:
    ne = b.n * b.eps
    if ne >= 1:
        raise BoundNotApplicableError(f"n*eps = {ne} >= 1")
    return ne / (1 - ne) * b.sum_abs


def bound_kahan_leading(b: BoundInput) -> Fraction:
    """Leading order only; the O(n*eps^2) tail carries no published constant."""
    return 2 * b.eps * b.sum_abs


def _three_term(n: int, sigma: Fraction, tau: Fraction, sum_abs: Fraction) -> Fraction:
    ns = (n - 1) * sigma
    if ns >= 1:
        raise BoundNotApplicableError(f"(n-1)*sigma = {ns} >= 1")
    growth = ns / (1 - ns)
    return tau * sum_abs + growth * sum_abs + growth * tau * sum_abs


def bound_6op_pair(b: BoundInput) -> Fraction:
    """Bound on |s_n + e_n - sum| for single 6-op compensation: the sigma/tau
    roles are played by eps**2 and eps."""
    return _three_term(b.n, b.eps**2, b.eps, b.sum_abs)


def bound_6op_s_only(b: BoundInput) -> Fraction:
    if b.abs_sum is None:
        raise ValueError("s-only bound needs abs_sum")
    return (1 + b.eps) * bound_6op_pair(b) + b.eps * b.abs_sum


def bound_compensated(kind: Algorithm, b: BoundInput) -> Fraction:
    st = sigma_tau(kind, b.eps)
    return _three_term(b.n, st.sigma, st.tau, b.sum_abs)


def bound_compensated_s_only(kind: Algorithm, b: BoundInput) -> Fraction:
    if b.abs_sum is None:
        raise ValueError("s-only bound needs abs_sum")
    return (1 + b.eps) * bound_compensated(kind, b) + b.eps * b.abs_sum


def bound_leading(kind: Algorithm, b: BoundInput) -> Fraction:
    """Leading-order coefficient times sum of |addends|."""
    if kind is Algorithm.PLAIN:
        return b.n * b.eps * b.sum_abs
    if kind is Algorithm.KAHAN3OP:
        return 2 * b.eps * b.sum_abs
    if kind is Algorithm.COMP6OP:
        return b.eps * b.sum_abs
    if kind is Algorithm.DOUBLE6OP:
        return (2 * b.n - 1) * b.eps**2 * b.sum_abs
    if kind is Algorithm.TRIPLE6OP:
        return (b.n + 1) * b.eps**2 * b.sum_abs
    raise ValueError(f"unknown kind {kind}")


# Slack constant for the unpublished O(n*eps^2) tail of the 3-op bound;
# a test-engineering choice, non-normative.
KAHAN_SLACK = 4


def bound_for(algorithm: Algorithm, b: BoundInput) -> Fraction:
    """Dispatch used by the experiment harness for pair-error validation."""
    if algorithm is Algorithm.PLAIN:
        return bound_plain(b)
    if algorithm is Algorithm.KAHAN3OP:
        return bound_kahan_leading(b) + KAHAN_SLACK * b.n * b.eps**2 * b.sum_abs
    if algorithm is Algorithm.COMP6OP:
        return bound_6op_pair(b)
    return bound_compensated(algorithm, b)


def format_sig3(x) -> str:
    """Three-significant-digit scientific form, e.g. 6.67E-02."""
    return f"{float(x):.2E}"
