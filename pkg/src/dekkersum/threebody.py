"""Planar three-body figure-eight orbit under symplectic Euler.

Each of the twelve scalar state components (R_x, R_y, V_x, V_y per body)
is maintained by its own compensated accumulator of the selected
algorithm; the per-step increments h*V and h*A are computed in plain
working-precision arithmetic.  Unit masses and unit gravitational
constant.  The deviation metric compares positions against a binary64
double-compensated reference trajectory.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .summation import Algorithm

# Figure-eight choreography initial conditions (Chenciner-Montgomery
# numerical values): body 1 and body 3 mirror each other, body 2 starts
# at the origin carrying twice the opposite velocity of the outer bodies.
IC_R1 = (-0.97000436, 0.24308753)
IC_V2 = (0.93240737, 0.86473146)
PERIOD = 6.3259

_ALGO_IDS = {
    Algorithm.PLAIN: 0,
    Algorithm.KAHAN3OP: 1,
    Algorithm.COMP6OP: 2,
    Algorithm.DOUBLE6OP: 3,
    Algorithm.TRIPLE6OP: 4,
}


class BlowUpError(RuntimeError):
    """Trajectory became non-finite (collision / distance underflow)."""

    def __init__(self, step: int):
        super().__init__(f"trajectory non-finite at step {step}")
        self.step = step


@dataclass(frozen=True)
class SimSpec:
    precision: str
    h: float
    periods: int
    compensation: Algorithm
    period_length: float = PERIOD
    sample_stride: int = 1

    def __post_init__(self) -> None:
        if self.precision not in ("binary32", "binary64"):
            raise ValueError(f"bad precision {self.precision}")
        if self.h <= 0:
            raise ValueError("h must be > 0")
        if self.periods < 1:
            raise ValueError("periods must be >= 1")
        if self.sample_stride < 1:
            raise ValueError("sample_stride must be >= 1")

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(np.float32 if self.precision == "binary32" else np.float64)

    @property
    def steps_per_period(self) -> int:
        return round(self.period_length / self.h)

    @property
    def n_steps(self) -> int:
        return self.steps_per_period * self.periods


def initial_state(dtype) -> np.ndarray:
    """State vector [rx1,ry1,rx2,ry2,rx3,ry3, vx1,...,vy3]."""
    r1 = np.array(IC_R1, dtype=np.float64)
    v2 = np.array(IC_V2, dtype=np.float64)
    state = np.empty(12, dtype=np.float64)
    state[0:2] = r1
    state[2:4] = 0.0
    state[4:6] = -r1
    state[6:8] = -v2 / 2
    state[8:10] = v2
    state[10:12] = -v2 / 2
    return state.astype(dtype)


@njit(cache=True)
def _acc_step(algo, s, e, x):
    """One accumulator update; returns the new (s, e)."""
    if algo == 0:
        return s + x, e
    if algo == 1:
        y = e + x
        z = s + y
        w = z - s
        return z, y - w
    if algo == 2:
        y = e + x
        z = s + y
        w = z - s
        z1 = y - w
        v = w - z
        z2 = s + v
        return z, z1 + z2
    if algo == 3:
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
        return z, y1 + y2
    y0 = e + x
    wa = y0 - e
    a1 = x - wa
    va = wa - y0
    a2 = e + va
    u = a1 + a2
    t = s + y0
    wb = t - s
    b1 = y0 - wb
    vb = wb - t
    b2 = s + vb
    v = b1 + b2
    w = u + v
    z = t + w
    wc = z - t
    c1 = w - wc
    vc = wc - z
    c2 = t + vc
    return z, c1 + c2


@njit(cache=True)
def _simulate(algo, s, e, h_arr, n_steps, out):
    h = h_arr[0]
    zero = h - h
    a = np.empty(6, s.dtype)
    for k in range(n_steps):
        for i in range(6):
            x = h * s[6 + i]
            s[i], e[i] = _acc_step(algo, s[i], e[i], x)
        for b in range(3):
            ax = zero
            ay = zero
            bx = s[2 * b]
            by = s[2 * b + 1]
            for j in range(3):
                if j != b:
                    dx = s[2 * j] - bx
                    dy = s[2 * j + 1] - by
                    d2 = dx * dx + dy * dy
                    d3 = np.sqrt(d2) * d2
                    ax = ax + dx / d3
                    ay = ay + dy / d3
            a[2 * b] = ax
            a[2 * b + 1] = ay
        for i in range(6):
            x = h * a[i]
            s[6 + i], e[6 + i] = _acc_step(algo, s[6 + i], e[6 + i], x)
        for i in range(12):
            out[k, i] = s[i]


def run_simulation(spec: SimSpec) -> np.ndarray:
    """Trajectory array of shape (n_steps + 1, 12), float64, row 0 = t=0.

    Row k > 0 holds the running-sum state after step k (compensation terms
    are internal and not reported).
    """
    dtype = spec.dtype
    s = initial_state(dtype)
    e = np.zeros(12, dtype=dtype)
    h = dtype.type(spec.h)
    out = np.empty((spec.n_steps, 12), dtype=np.float64)
    _simulate(_ALGO_IDS[spec.compensation], s, e, np.array([h], dtype=dtype), spec.n_steps, out)
    if not np.isfinite(out).all():
        bad = int(np.argwhere(~np.isfinite(out).all(axis=1))[0, 0]) + 1
        raise BlowUpError(bad)
    return np.vstack([initial_state(np.float64)[None, :], out])


def max_position_deviation(traj: np.ndarray, ref: np.ndarray) -> float:
    """Max over time and bodies of the Euclidean distance between positions."""
    n = min(traj.shape[0], ref.shape[0])
    d = traj[:n, :6] - ref[:n, :6]
    dist2 = d[:, 0::2] ** 2 + d[:, 1::2] ** 2
    return float(np.sqrt(dist2.max()))


def reference_trajectory(spec: SimSpec) -> np.ndarray:
    """binary64 double-compensated run with the same stepping."""
    ref_spec = SimSpec(
        precision="binary64",
        h=spec.h,
        periods=spec.periods,
        compensation=Algorithm.DOUBLE6OP,
        period_length=spec.period_length,
        sample_stride=spec.sample_stride,
    )
    return run_simulation(ref_spec)


CSV_HEADER = "step,body,rx,ry,vx,vy"


def write_csv(path, traj: np.ndarray, stride: int = 1) -> None:
    with open(path, "w") as f:
        f.write(CSV_HEADER + "\n")
        for k in range(0, traj.shape[0], stride):
            for b in range(3):
                f.write(
                    f"{k},{b + 1},{traj[k, 2 * b]:.9E},{traj[k, 2 * b + 1]:.9E},"
                    f"{traj[k, 6 + 2 * b]:.9E},{traj[k, 7 + 2 * b]:.9E}\n"
                )


_SVG_COLORS = ("#d62728", "#2ca02c", "#1f77b4")


def write_orbit_svg(path, traj: np.ndarray, title: str = "") -> None:
    """Self-contained orbit plot: fixed axes, one polyline per body."""
    width, height = 640, 360
    xlo, xhi, ylo, yhi = -1.6, 1.6, -0.9, 0.9

    def sx(x):
        return (x - xlo) / (xhi - xlo) * width

    def sy(y):
        return height - (y - ylo) / (yhi - ylo) * height

    stride = max(1, traj.shape[0] // 20000)  # cap the point count per polyline
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="8" y="16" font-family="monospace" font-size="12">{title}</text>',
    ]
    for b in range(3):
        pts = " ".join(
            f"{sx(traj[k, 2 * b]):.1f},{sy(traj[k, 2 * b + 1]):.1f}"
            for k in range(0, traj.shape[0], stride)
        )
        parts.append(
            f'<polyline points="{pts}" fill="none" '
            f'stroke="{_SVG_COLORS[b]}" stroke-width="0.6"/>'
        )
    parts.append("</svg>")
    with open(path, "w") as f:
        f.write("\n".join(parts))
