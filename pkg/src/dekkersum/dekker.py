"""Simulated floating-point system with integer mantissas and nonunique representations.

Numbers are values m * beta**e with |m| < beta**t and emin <= e <= emax.
A number may admit several representations; rounding is performed on the
representation with the smallest admissible exponent, with ties broken to
the even mantissa (configurable for mutation testing).  Overflow clips to
the largest-magnitude element instead of producing infinities.

Everything here is exact integer arithmetic; no host floats are involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

ENUMERATION_GUARD = 10**6

TIE_EVEN = "even"
TIE_AWAY = "away"  # away from zero
TIE_UP = "up"      # toward +infinity; breaks symmetry, used by mutation tests


class EnumerationGuardError(ValueError):
    """System is too large to enumerate."""


@dataclass(frozen=True)
class SystemParams:
    """Defines one system: base, mantissa digit count, exponent range."""

    beta: int
    t: int
    emin: int
    emax: int

    def __post_init__(self) -> None:
        if self.beta < 2:
            raise ValueError(f"beta must be >= 2, got {self.beta}")
        if self.t < 1:
            raise ValueError(f"t must be >= 1, got {self.t}")
        if self.emin > self.emax:
            raise ValueError(f"emin {self.emin} > emax {self.emax}")

    @property
    def M(self) -> int:
        return self.beta**self.t

    @property
    def max_value(self) -> int:
        """|value| of the largest element, as the pair (M-1, emax) folded lazily."""
        return self.M - 1

    def unit_roundoff_exact(self) -> tuple[int, int]:
        """epsilon = beta**(1-t) / 2 as an exact (numerator, denominator) pair."""
        return (self.beta, 2 * self.M)


@dataclass(frozen=True)
class Repr:
    """One representation m * beta**e.  Structural equality; for value
    equality compare ``to_exact`` results under the same params."""

    m: int
    e: int


@dataclass(frozen=True)
class ExactValue:
    """Exact value n * beta**q with unbounded exponent.

    Canonical: n == 0 implies q == 0; otherwise beta does not divide n,
    so equality of canonical values is field-wise.  Construct through
    ``exact_value`` to maintain canonical form.
    """

    n: int
    q: int

    @property
    def is_zero(self) -> bool:
        return self.n == 0


def exact_value(beta: int, n: int, q: int) -> ExactValue:
    """Canonicalize n * beta**q (strip trailing base-beta zeros)."""
    if n == 0:
        return ExactValue(0, 0)
    while n % beta == 0:
        n //= beta
        q += 1
    return ExactValue(n, q)


def exact_neg(v: ExactValue) -> ExactValue:
    return ExactValue(-v.n, v.q)


def exact_add(beta: int, a: ExactValue, b: ExactValue) -> ExactValue:
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    q = min(a.q, b.q)
    n = a.n * beta ** (a.q - q) + b.n * beta ** (b.q - q)
    return exact_value(beta, n, q)


def exact_cmp(beta: int, a: ExactValue, b: ExactValue) -> int:
    """-1, 0, or 1 as a <=> b."""
    d = exact_add(beta, a, exact_neg(b))
    return 0 if d.n == 0 else (1 if d.n > 0 else -1)


def exact_abs_cmp(beta: int, a: ExactValue, b: ExactValue) -> int:
    return exact_cmp(beta, ExactValue(abs(a.n), a.q), ExactValue(abs(b.n), b.q))


def repr_to_exact(beta: int, r: Repr) -> ExactValue:
    return exact_value(beta, r.m, r.e)


def is_valid_repr(p: SystemParams, r: Repr) -> bool:
    return abs(r.m) < p.M and p.emin <= r.e <= p.emax


def values_equal(p: SystemParams, a: Repr, b: Repr) -> bool:
    return repr_to_exact(p.beta, a) == repr_to_exact(p.beta, b)


def canonicalize(p: SystemParams, r: Repr) -> Repr:
    """Normal representation when one exists, else the e == emin form.

    The result has the smallest exponent among all representations of the
    number, which makes it unique (zero is pinned at emin as well).
    """
    m, e = r.m, r.e
    if m == 0:
        return Repr(0, p.emin)
    lead = p.beta ** (p.t - 1)
    while abs(m) < lead and e > p.emin:
        m *= p.beta
        e -= 1
    return Repr(m, e)


def _ndigits(a: int, beta: int) -> int:
    """Number of base-beta digits of a > 0."""
    if beta == 2:
        return a.bit_length()
    k = 0
    while a:
        a //= beta
        k += 1
    return k


def repr_exponent_range(p: SystemParams, v: ExactValue) -> tuple[int, int] | None:
    """Range [lo, hi] of exponents at which v admits a valid representation,
    or None when v is not an element of the system."""
    if v.is_zero:
        return (p.emin, p.emax)
    hi = min(v.q, p.emax)
    lo = max(p.emin, v.q + _ndigits(abs(v.n), p.beta) - p.t)
    if lo > hi:
        return None
    return (lo, hi)


def exceeds_range(p: SystemParams, v: ExactValue) -> bool:
    """True iff |v| > (M-1) * beta**emax, the clipping condition."""
    if v.is_zero:
        return False
    # Digit-count fast path: beta^(q+k-1) <= |v| < beta^(q+k), while the
    # limit satisfies beta^(emax+t-1) <= (M-1)*beta^emax < beta^(emax+t).
    k = v.q + _ndigits(abs(v.n), p.beta)
    if k != p.emax + p.t:
        return k > p.emax + p.t
    lim = exact_value(p.beta, p.M - 1, p.emax)
    return exact_abs_cmp(p.beta, v, lim) > 0


def round_exact(p: SystemParams, v: ExactValue, tie: str = TIE_EVEN) -> Repr:
    """Nearest element of the system, tie broken per ``tie`` on the integer
    mantissa at the smallest admissible exponent.  Out-of-range values clip
    to +/-(M-1) * beta**emax.  The result is canonical."""
    if v.is_zero:
        return Repr(0, p.emin)
    if exceeds_range(p, v):
        sign = 1 if v.n > 0 else -1
        return Repr(sign * (p.M - 1), p.emax)

    # Smallest E >= emin with |v| < beta**(E + t).
    k = _ndigits(abs(v.n), p.beta)
    E = max(p.emin, v.q + k - p.t)

    if E <= v.q:
        m = v.n * p.beta ** (v.q - E)
    else:
        d = p.beta ** (E - v.q)
        f, r = divmod(v.n, d)  # Python divmod floors, also for negative n
        r2 = 2 * r
        if r2 < d:
            m = f
        elif r2 > d:
            m = f + 1
        elif tie == TIE_EVEN:
            m = f if f % 2 == 0 else f + 1
        elif tie == TIE_AWAY:
            m = f + 1 if v.n > 0 else f
        elif tie == TIE_UP:
            m = f + 1
        else:
            raise ValueError(f"unknown tie rule {tie!r}")

    if abs(m) == p.M:  # mantissa carry, e.g. 7.5 -> 8 at t=3
        m //= p.beta
        E += 1
        assert E <= p.emax, "carry past emax precluded by the clipping test"
    return Repr(m, E)


def exact_sum(p: SystemParams, x: Repr, y: Repr) -> ExactValue:
    """Exact value of x + y, closed over representations by construction."""
    q = min(x.e, y.e)
    n = x.m * p.beta ** (x.e - q) + y.m * p.beta ** (y.e - q)
    return exact_value(p.beta, n, q)


def fl_add(p: SystemParams, x: Repr, y: Repr, tie: str = TIE_EVEN) -> Repr:
    if not is_valid_repr(p, x):
        raise ValueError(f"invalid operand {x} in {p}")
    if not is_valid_repr(p, y):
        raise ValueError(f"invalid operand {y} in {p}")
    return round_exact(p, exact_sum(p, x, y), tie)


def _count_numbers(p: SystemParams) -> int:
    nonneg = p.M + (p.emax - p.emin) * (p.M - p.beta ** (p.t - 1))
    return 2 * nonneg - 1


def enumerate_numbers(p: SystemParams) -> list[Repr]:
    """One canonical representation per distinct number, ascending."""
    if _count_numbers(p) > ENUMERATION_GUARD:
        raise EnumerationGuardError(
            f"system has {_count_numbers(p)} numbers, guard is {ENUMERATION_GUARD}"
        )
    positives: list[tuple[int, Repr]] = []
    for m in range(1, p.M):
        positives.append((m, Repr(m, p.emin)))
    lead = p.beta ** (p.t - 1)
    for e in range(p.emin + 1, p.emax + 1):
        scale = p.beta ** (e - p.emin)
        for m in range(lead, p.M):
            positives.append((m * scale, Repr(m, e)))
    positives.sort(key=lambda kv: kv[0])
    out = [Repr(-r.m, r.e) for _, r in reversed(positives)]
    out.append(Repr(0, p.emin))
    out.extend(r for _, r in positives)
    return out


def iter_representations(p: SystemParams) -> Iterator[Repr]:
    """All valid representations, including redundant ones."""
    for e in range(p.emin, p.emax + 1):
        for m in range(-(p.M - 1), p.M):
            yield Repr(m, e)
