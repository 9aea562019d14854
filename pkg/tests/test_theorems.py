"""The exhaustive check suite on selected systems, plus mutation sensitivity."""

import pytest

from dekkersum.dekker import SystemParams, TIE_UP
from dekkersum.theorems import (
    ALL_CHECKS,
    any_failed,
    check_fast_two_sum_exact,
    check_rounding_symmetry,
    check_two_sum_exact,
    default_grid,
    render_report,
    run_checks,
)

SAMPLE = [
    SystemParams(2, 1, 0, 0),       # degenerate single-digit, single-bin
    SystemParams(2, 1, -3, 3),
    SystemParams(2, 2, -2, 2),
    SystemParams(2, 3, -3, 0),
    SystemParams(2, 3, 0, 3),
]


def test_default_grid_shape():
    grid = default_grid()
    assert len(grid) == 3 * 4 * 4
    assert all(p.beta == 2 for p in grid)
    assert {p.t for p in grid} == {1, 2, 3}


@pytest.mark.parametrize("check", ALL_CHECKS, ids=lambda c: c.__name__)
@pytest.mark.parametrize("p", SAMPLE, ids=str)
def test_checks_pass_on_sample_systems(p, check):
    r = check(p)
    assert r.passed, r.line()
    assert r.checked > 0


def test_larger_system_spot_checks():
    # one bigger system than the acceptance grid, EFT identities only
    p = SystemParams(2, 4, -4, 4)
    assert check_two_sum_exact(p).passed
    assert check_fast_two_sum_exact(p).passed


def test_mutation_half_up_breaks_symmetry():
    broken = [
        r for p in SAMPLE
        for r in [check_rounding_symmetry(p, tie=TIE_UP)]
        if not r.passed
    ]
    assert broken, "half-up tie rule must yield a symmetry counterexample"
    assert broken[0].counterexample


def test_report_rendering():
    results = run_checks(grid=SAMPLE[:2], checks=ALL_CHECKS[:2])
    text = render_report(results)
    assert "PASS" in text and "0 failed" in text
    assert not any_failed(results)
