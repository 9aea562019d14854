"""Worked step-by-step traces of the summation algorithms on a tiny system.

Runs the algorithm bodies on the simulated backend (beta=2, t=3) while
recording every named temporary, producing the four classic tables that
show where single compensation loses a term and double/triple
compensation recovers it.  Final states are cross-checked against the
plain Accumulator so the traced bodies cannot drift from the real ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .backends import DekkerBackend
from .dekker import Repr, SystemParams, exact_value, round_exact
from .eft import fast_two_sum, two_sum
from .summation import Accumulator, Algorithm

PEDAGOGY_PARAMS = SystemParams(beta=2, t=3, emin=-6, emax=8)

# x1 = 2^(t+1), x2 = x3 = -1: the small addends vanish under plain
# summation but are recovered by any compensated variant.
SEQUENCE_A = (16, -1, -1)
# x1 = 1, x2 = 2^(t+1), x3 = -2^(t+1), x4 = -1: defeats single
# compensation (true sum 0), fixed by double/triple compensation.
SEQUENCE_B = (1, 16, -16, -1)

TRACE_COLUMNS = {
    Algorithm.PLAIN: ("s",),
    Algorithm.KAHAN3OP: ("y", "s", "e"),
    Algorithm.COMP6OP: ("y", "s", "e"),
    Algorithm.DOUBLE6OP: ("t", "v", "w", "s", "e"),
    Algorithm.TRIPLE6OP: ("y", "u", "t", "v", "w", "s", "e"),
}


def repr_of_int(p: SystemParams, k: int) -> Repr:
    """Canonical representation of a small integer; must be exact."""
    r = round_exact(p, exact_value(p.beta, k, 0))
    if exact_value(p.beta, r.m, r.e) != exact_value(p.beta, k, 0):
        raise ValueError(f"{k} is not an element of {p}")
    return r


def repr_value(r: Repr) -> Fraction:
    return Fraction(r.m) * Fraction(2) ** r.e


@dataclass(frozen=True)
class Trace:
    algorithm: Algorithm
    columns: tuple[str, ...]
    rows: tuple[dict, ...]           # one dict per addend, column -> Fraction
    final: tuple[Fraction, Fraction]  # (s, e)


def trace(algorithm: Algorithm, sequence, params: SystemParams = PEDAGOGY_PARAMS) -> Trace:
    b = DekkerBackend(params)
    xs = [repr_of_int(params, k) for k in sequence]
    s, e = b.zero, b.zero
    rows = []
    for x in xs:
        row: dict = {}
        if algorithm is Algorithm.PLAIN:
            s = b.add(s, x)
        elif algorithm is Algorithm.KAHAN3OP:
            row["y"] = y = b.add(e, x)
            s, e = fast_two_sum(b, s, y)
        elif algorithm is Algorithm.COMP6OP:
            row["y"] = y = b.add(e, x)
            s, e = two_sum(b, s, y)
        elif algorithm is Algorithm.DOUBLE6OP:
            row["t"], row["v"] = t, v = two_sum(b, s, x)
            row["w"] = w = b.add(e, v)
            s, e = two_sum(b, t, w)
        elif algorithm is Algorithm.TRIPLE6OP:
            row["y"], row["u"] = y, u = two_sum(b, e, x)
            row["t"], row["v"] = t, v = two_sum(b, s, y)
            row["w"] = w = b.add(u, v)
            s, e = two_sum(b, t, w)
        else:  # pragma: no cover
            raise ValueError(f"unknown algorithm {algorithm}")
        row["s"], row["e"] = s, e
        rows.append({k: repr_value(v) for k, v in row.items() if k in TRACE_COLUMNS[algorithm]})

    check = Accumulator(algorithm, b).extend(xs).finish()
    fs, fe = repr_value(s), repr_value(e)
    assert (repr_value(check[0]), repr_value(check[1])) == (fs, fe), (
        "traced body diverged from Accumulator"
    )
    return Trace(algorithm, TRACE_COLUMNS[algorithm], tuple(rows), (fs, fe))


def _fmt(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    return str(float(v))


def render(tr: Trace, title: str) -> str:
    lines = [title]
    for i, row in enumerate(tr.rows, start=1):
        cells = "  ".join(f"{c}={_fmt(row[c]):>4}" for c in tr.columns)
        lines.append(f"  i={i}:  {cells}")
    lines.append(f"  final: s={_fmt(tr.final[0])}, e={_fmt(tr.final[1])}")
    return "\n".join(lines)


def standard_traces() -> list[tuple[str, Trace]]:
    """The four tables, plus the plain-summation foil, in display order."""
    t = PEDAGOGY_PARAMS.t
    a, b = list(SEQUENCE_A), list(SEQUENCE_B)
    return [
        (f"Plain over {a} (small addends lost; s stays {2 ** (t + 1)})",
         trace(Algorithm.PLAIN, SEQUENCE_A)),
        (f"3-op compensated over {a}", trace(Algorithm.KAHAN3OP, SEQUENCE_A)),
        (f"6-op compensated over {a}", trace(Algorithm.COMP6OP, SEQUENCE_A)),
        (f"6-op compensated over {b} (exact answer 0, output wrong)",
         trace(Algorithm.COMP6OP, SEQUENCE_B)),
        (f"double 6-op compensated over {b}", trace(Algorithm.DOUBLE6OP, SEQUENCE_B)),
        (f"triple 6-op compensated over {b}", trace(Algorithm.TRIPLE6OP, SEQUENCE_B)),
    ]


def render_all() -> str:
    return "\n\n".join(render(tr, title) for title, tr in standard_traces())
