"""Exhaustive verification of rounding and EFT properties on tiny systems.

Every check enumerates all numbers (or all addend pairs) of a small
simulated system and tests one property with exact rational arithmetic.
A failing check reports a concrete counterexample.  Running the suite
with the deliberately asymmetric half-up tie rule must produce a
counterexample -- that mutation run is how the suite proves it can
actually catch a broken rounding rule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .backends import DekkerBackend
from .dekker import (
    ExactValue,
    Repr,
    SystemParams,
    TIE_AWAY,
    TIE_EVEN,
    TIE_UP,
    enumerate_numbers,
    exact_add,
    exact_neg,
    exact_sum,
    exceeds_range,
    repr_exponent_range,
    repr_to_exact,
    round_exact,
)
from .eft import fast_two_sum, two_sum


def _frac(beta: int, v: ExactValue) -> Fraction:
    return Fraction(v.n) * Fraction(beta) ** v.q


@dataclass(frozen=True)
class CheckResult:
    name: str
    params: SystemParams
    passed: bool
    checked: int
    counterexample: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "" if self.passed else f"  counterexample: {self.counterexample}"
        p = self.params
        return (
            f"{status} {self.name} "
            f"[beta={p.beta} t={p.t} emin={p.emin} emax={p.emax}] "
            f"({self.checked} cases){extra}"
        )


def _pair_sums(p: SystemParams):
    """All exact sums x+y over distinct-number pairs, with the pair."""
    numbers = enumerate_numbers(p)
    for x, y in itertools.product(numbers, repeat=2):
        yield x, y, exact_sum(p, x, y)


def check_rounding_symmetry(p: SystemParams, tie: str = TIE_EVEN) -> CheckResult:
    """round(-v) == -round(v) over all pairwise sums."""
    n = 0
    for x, y, v in _pair_sums(p):
        n += 1
        a = round_exact(p, exact_neg(v), tie)
        b = round_exact(p, v, tie)
        if repr_to_exact(p.beta, a) != exact_neg(repr_to_exact(p.beta, b)):
            return CheckResult(
                "rounding_symmetry", p, False, n,
                f"x={x} y={y}: round(-(x+y))={a} but -round(x+y)={Repr(-b.m, b.e)}",
            )
    return CheckResult("rounding_symmetry", p, True, n)


def check_rounding_monotonicity(p: SystemParams, tie: str = TIE_EVEN) -> CheckResult:
    """|v1| <= |v2| implies |round(v1)| <= |round(v2)| over all pairwise sums."""
    sums = {(v.n, v.q): v for _, _, v in _pair_sums(p)}.values()
    ranked = sorted(sums, key=lambda v: abs(_frac(p.beta, v)))
    prev = Fraction(-1)
    prev_v = None
    n = 0
    for v in ranked:
        n += 1
        r = round_exact(p, v, tie)
        cur = abs(_frac(p.beta, repr_to_exact(p.beta, r)))
        if cur < prev:
            return CheckResult(
                "rounding_monotonicity", p, False, n,
                f"|{prev_v}| <= |{v}| but |round| decreased {prev} -> {cur}",
            )
        prev, prev_v = cur, v
    return CheckResult("rounding_monotonicity", p, True, n)


def _int_round(n: int, d: int, tie: str) -> int:
    """Nearest integer to n/d (d a positive power of beta), tie per rule."""
    f, r = divmod(n, d)
    r2 = 2 * r
    if r2 < d:
        return f
    if r2 > d:
        return f + 1
    if tie == TIE_EVEN:
        return f if f % 2 == 0 else f + 1
    if tie == TIE_AWAY:
        return f + 1 if n > 0 else f
    if tie == TIE_UP:
        return f + 1
    raise ValueError(f"unknown tie rule {tie!r}")


def check_mantissa_integer_rounding(p: SystemParams, tie: str = TIE_EVEN) -> CheckResult:
    """For every representation m*beta^e of z = round(v) with v in range:
    m equals the consistent nearest-integer rounding of v / beta^e."""
    n = 0
    for x, y, v in _pair_sums(p):
        if exceeds_range(p, v):
            continue
        z = round_exact(p, v, tie)
        zv = repr_to_exact(p.beta, z)
        rng = repr_exponent_range(p, zv)
        assert rng is not None
        lo, hi = rng
        for e in range(lo, hi + 1):
            n += 1
            if v.q >= e:
                zeta_num, zeta_den = v.n * p.beta ** (v.q - e), 1
            else:
                zeta_num, zeta_den = v.n, p.beta ** (e - v.q)
            want = _int_round(zeta_num, zeta_den, tie)
            have = zv.n * p.beta ** (zv.q - e) if not zv.is_zero else 0
            if have != want:
                return CheckResult(
                    "mantissa_integer_rounding", p, False, n,
                    f"x={x} y={y} e={e}: mantissa {have} != round(zeta) {want}",
                )
    return CheckResult("mantissa_integer_rounding", p, True, n)


def check_sum_exponent_upper_bound(p: SystemParams, tie: str = TIE_EVEN) -> CheckResult:
    """fl(x+y) admits a representation with exponent <= max(e(x), e(y)) + 1,
    where e(x), e(y) are the canonical (smallest) exponents."""
    n = 0
    b = DekkerBackend(p, tie)
    for x, y, _v in _pair_sums(p):
        n += 1
        z = b.add(x, y)
        rng = repr_exponent_range(p, repr_to_exact(p.beta, z))
        assert rng is not None
        if rng[0] > max(x.e, y.e) + 1:
            return CheckResult(
                "sum_exponent_upper_bound", p, False, n,
                f"x={x} y={y}: min exponent of z={z} is {rng[0]}",
            )
    return CheckResult("sum_exponent_upper_bound", p, True, n)


def check_exact_sum_exact_subtraction(p: SystemParams, tie: str = TIE_EVEN) -> CheckResult:
    """If fl(x+y) = x+y exactly then z-x and z-y are also exact."""
    n = 0
    b = DekkerBackend(p, tie)
    for x, y, v in _pair_sums(p):
        z = b.add(x, y)
        if repr_to_exact(p.beta, z) != v:
            continue
        n += 1
        for a, other in ((x, y), (y, x)):
            d = b.sub(z, a)
            if repr_to_exact(p.beta, d) != repr_to_exact(p.beta, other):
                return CheckResult(
                    "exact_sum_exact_subtraction", p, False, n,
                    f"x={x} y={y}: z-{a} = {d} != {other}",
                )
    return CheckResult("exact_sum_exact_subtraction", p, True, n)


def check_low_exponent_exactness(p: SystemParams, tie: str = TIE_EVEN) -> CheckResult:
    """Non-overflowing sums: canonical e(z) <= min(e(x), e(y)) forces z = x+y."""
    n = 0
    b = DekkerBackend(p, tie)
    for x, y, v in _pair_sums(p):
        if exceeds_range(p, v):
            continue
        z = b.add(x, y)
        rng = repr_exponent_range(p, repr_to_exact(p.beta, z))
        assert rng is not None
        if rng[0] > min(x.e, y.e):
            continue
        n += 1
        if repr_to_exact(p.beta, z) != v:
            return CheckResult(
                "low_exponent_exactness", p, False, n,
                f"x={x} y={y}: z={z} != exact {v}",
            )
    return CheckResult("low_exponent_exactness", p, True, n)


def check_emin_exactness(p: SystemParams, tie: str = TIE_EVEN) -> CheckResult:
    """Non-overflowing sums: if z admits an emin representation, z = x+y."""
    n = 0
    b = DekkerBackend(p, tie)
    for x, y, v in _pair_sums(p):
        if exceeds_range(p, v):
            continue
        z = b.add(x, y)
        rng = repr_exponent_range(p, repr_to_exact(p.beta, z))
        assert rng is not None
        if rng[0] != p.emin:
            continue
        n += 1
        if repr_to_exact(p.beta, z) != v:
            return CheckResult(
                "emin_exactness", p, False, n,
                f"x={x} y={y}: z={z} != exact {v}",
            )
    return CheckResult("emin_exactness", p, True, n)


def check_rounding_error_bounds(p: SystemParams, tie: str = TIE_EVEN) -> CheckResult:
    """Non-overflowing sums v rounding to z:
    |z - v| <= beta^e(z)/2, |z - v| <= eps|z|, and |z - v| <= eps|v|."""
    n = 0
    eps = Fraction(p.beta, 2 * p.M)
    b = DekkerBackend(p, tie)
    for x, y, v in _pair_sums(p):
        if exceeds_range(p, v):
            continue
        n += 1
        z = b.add(x, y)
        zf = _frac(p.beta, repr_to_exact(p.beta, z))
        vf = _frac(p.beta, v)
        err = abs(zf - vf)
        half_ulp = Fraction(p.beta) ** z.e / 2
        if err > half_ulp:
            return CheckResult(
                "rounding_error_bounds", p, False, n,
                f"x={x} y={y}: |z-v|={err} > beta^e(z)/2={half_ulp}",
            )
        if err > eps * abs(zf):
            return CheckResult(
                "rounding_error_bounds", p, False, n,
                f"x={x} y={y}: |z-v|={err} > eps|z|={eps * abs(zf)}",
            )
        if err > eps * abs(vf):
            return CheckResult(
                "rounding_error_bounds", p, False, n,
                f"x={x} y={y}: |z-v|={err} > eps|v|={eps * abs(vf)}",
            )
    return CheckResult("rounding_error_bounds", p, True, n)


def _admits_ordered(p: SystemParams, x: Repr, y: Repr) -> bool:
    """True iff x, y admit representations with e(x) >= e(y)."""
    rx = repr_exponent_range(p, repr_to_exact(p.beta, x))
    ry = repr_exponent_range(p, repr_to_exact(p.beta, y))
    assert rx is not None and ry is not None
    return rx[1] >= ry[0]


def check_two_sum_exact(p: SystemParams, tie: str = TIE_EVEN) -> CheckResult:
    """Unconditional 6-op identity z + zz = x + y, clipping included."""
    n = 0
    b = DekkerBackend(p, tie)
    for x, y, v in _pair_sums(p):
        n += 1
        z, zz = two_sum(b, x, y)
        got = exact_add(p.beta, repr_to_exact(p.beta, z), repr_to_exact(p.beta, zz))
        if got != v:
            return CheckResult(
                "two_sum_exact", p, False, n,
                f"x={x} y={y}: z={z} zz={zz}, z+zz={got} != {v}",
            )
    return CheckResult("two_sum_exact", p, True, n)


def check_fast_two_sum_exact(p: SystemParams, tie: str = TIE_EVEN) -> CheckResult:
    """3-op identity z + zz = x + y for pairs admitting e(x) >= e(y)."""
    n = 0
    b = DekkerBackend(p, tie)
    for x, y, v in _pair_sums(p):
        if not _admits_ordered(p, x, y):
            continue
        n += 1
        z, zz = fast_two_sum(b, x, y)
        got = exact_add(p.beta, repr_to_exact(p.beta, z), repr_to_exact(p.beta, zz))
        if got != v:
            return CheckResult(
                "fast_two_sum_exact", p, False, n,
                f"x={x} y={y}: z={z} zz={zz}, z+zz={got} != {v}",
            )
    return CheckResult("fast_two_sum_exact", p, True, n)


def check_residual_bounds(p: SystemParams, tie: str = TIE_EVEN) -> CheckResult:
    """Non-overflowing sums: the 6-op residual obeys
    |zz| <= eps|z|, |zz| <= beta^e(z)/2, and |zz| <= eps|x+y|."""
    n = 0
    eps = Fraction(p.beta, 2 * p.M)
    b = DekkerBackend(p, tie)
    for x, y, v in _pair_sums(p):
        if exceeds_range(p, v):
            continue
        n += 1
        z, zz = two_sum(b, x, y)
        zf = abs(_frac(p.beta, repr_to_exact(p.beta, z)))
        zzf = abs(_frac(p.beta, repr_to_exact(p.beta, zz)))
        vf = abs(_frac(p.beta, v))
        half_ulp = Fraction(p.beta) ** z.e / 2
        if zzf > eps * zf or zzf > half_ulp or zzf > eps * vf:
            return CheckResult(
                "residual_bounds", p, False, n,
                f"x={x} y={y}: |zz|={zzf} vs eps|z|={eps * zf}, "
                f"half-ulp={half_ulp}, eps|x+y|={eps * vf}",
            )
    return CheckResult("residual_bounds", p, True, n)


ALL_CHECKS = (
    check_rounding_symmetry,
    check_rounding_monotonicity,
    check_mantissa_integer_rounding,
    check_sum_exponent_upper_bound,
    check_exact_sum_exact_subtraction,
    check_low_exponent_exactness,
    check_emin_exactness,
    check_rounding_error_bounds,
    check_two_sum_exact,
    check_fast_two_sum_exact,
    check_residual_bounds,
)


def default_grid() -> list[SystemParams]:
    return [
        SystemParams(2, t, emin, emax)
        for t in (1, 2, 3)
        for emin in range(-3, 1)
        for emax in range(0, 4)
    ]


def run_checks(grid=None, tie: str = TIE_EVEN, checks=ALL_CHECKS) -> list[CheckResult]:
    grid = default_grid() if grid is None else grid
    return [check(p, tie) for p in grid for check in checks]


def render_report(results) -> str:
    lines = [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results)} checks, {failed} failed")
    return "\n".join(lines)


def any_failed(results) -> bool:
    return any(not r.passed for r in results)
