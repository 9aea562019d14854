"""Number-line data emitter for small simulated systems.

Three views of the same system:
  all         -- one row per distinct number (canonical representation);
  dekker_bins -- every representation grouped by exponent bin: bin E holds
                 all beta**t nonnegative mantissas, uniformly dividing
                 [0, beta**(E+t));
  ieee_bins   -- the unique-representation view: normals in every bin,
                 plus the subnormals pinned at emin.
"""

from __future__ import annotations

from fractions import Fraction

from .dekker import ENUMERATION_GUARD, EnumerationGuardError, Repr, SystemParams, enumerate_numbers

VIEWS = ("all", "dekker_bins", "ieee_bins")
CSV_HEADER = "m,e,value,kind"


def _kind(p: SystemParams, r: Repr) -> str:
    if r.m == 0:
        return "zero"
    return "normal" if abs(r.m) >= p.beta ** (p.t - 1) else "subnormal"


def _rows_all(p: SystemParams):
    for r in enumerate_numbers(p):
        yield r


def _rows_dekker_bins(p: SystemParams):
    if (p.emax - p.emin + 1) * (2 * p.M - 1) > ENUMERATION_GUARD:
        raise EnumerationGuardError(f"too many representations in {p}")
    for e in range(p.emin, p.emax + 1):
        for m in range(0, p.M):
            yield Repr(m, e)


def _rows_ieee_bins(p: SystemParams):
    lead = p.beta ** (p.t - 1)
    for m in range(0, p.M):
        yield Repr(m, p.emin)
    for e in range(p.emin + 1, p.emax + 1):
        for m in range(lead, p.M):
            yield Repr(m, e)


_VIEW_FNS = {
    "all": _rows_all,
    "dekker_bins": _rows_dekker_bins,
    "ieee_bins": _rows_ieee_bins,
}


def emit_rows(p: SystemParams, view: str):
    """Yield (m, e, value: Fraction, kind) rows for one view."""
    if view not in VIEWS:
        raise ValueError(f"view must be one of {VIEWS}")
    for r in _VIEW_FNS[view](p):
        value = Fraction(r.m) * Fraction(p.beta) ** r.e
        yield (r.m, r.e, value, _kind(p, r))


def write_csv(path, p: SystemParams, view: str, delimiter: str = ",") -> None:
    with open(path, "w") as f:
        f.write(delimiter.join(CSV_HEADER.split(",")) + "\n")
        for m, e, value, kind in emit_rows(p, view):
            f.write(delimiter.join([str(m), str(e), f"{float(value):.9G}", kind]) + "\n")
