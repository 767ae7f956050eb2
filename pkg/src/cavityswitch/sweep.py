"""One-dimensional parameter sweeps of R and T, with the figure presets.

Three axes are supported: the photon momentum k, the control detuning delta_b
(moved through omega_3 at fixed omega_2 and omega_b) and the effective control
coupling g_b^2 n (a continuous axis realised as n = 1, g_b = sqrt(x)).
"""

from __future__ import annotations

import csv
import enum
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import bisect

from .errors import CavitySwitchError, NoInBandSolution
from .model import ModelParams, dispersion, invert_dispersion, make_point
from .oracle import LatticeProblem, solve_stationary
from .scattering import full_reflection_momenta, full_transmission_momenta, scattering_amplitudes

__all__ = [
    "Axis",
    "SweepSpec",
    "SweepRow",
    "SweepTable",
    "PRESETS",
    "preset",
    "run_sweep",
    "invert_dispersion",
    "bisect_transmission",
    "worker_count",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ["axis_name", "axis_value", "re_r", "im_r", "re_t", "im_t", "R", "T", "branch"]
ORACLE_COLUMNS = ["dr_abs", "dt_abs"]
DEFAULT_SAMPLES = 1001


class Axis(str, enum.Enum):
    K = "k"
    DELTA_B = "delta_b"
    GB2N = "gb2n"


@dataclass(frozen=True)
class SweepSpec:
    """A sweep of ``axis`` over ``m`` evenly spaced samples in [lo, hi].

    ``k`` is the fixed momentum for delta_b and g_b^2 n sweeps. K sweeps are
    clipped to [-pi, pi]; the sample at -pi is the same physical point as pi.
    """

    base: ModelParams
    axis: Axis
    lo: float
    hi: float
    m: int = DEFAULT_SAMPLES
    k: float | None = None
    oracle_check: bool = False
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "axis", Axis(self.axis))
        lo, hi = float(self.lo), float(self.hi)
        if self.axis is Axis.K:
            lo, hi = max(lo, -math.pi), min(hi, math.pi)
        elif self.k is None:
            raise ValueError(f"a {self.axis.value} sweep needs a fixed momentum k")
        if self.axis is Axis.GB2N and lo < 0:
            raise ValueError("g_b^2 n cannot be negative")
        if not lo < hi:
            raise ValueError(f"sweep range needs lo < hi, got [{lo}, {hi}]")
        if int(self.m) != self.m or self.m < 2:
            raise ValueError(f"need at least 2 samples, got {self.m}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "m", int(self.m))

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.m)

    def params_at(self, x: float) -> ModelParams:
        if self.axis is Axis.DELTA_B:
            return self.base.with_delta_b(x)
        if self.axis is Axis.GB2N:
            return self.base.replace(n=1, g_b=math.sqrt(x))
        return self.base

    def momentum_at(self, x: float) -> float:
        return x if self.axis is Axis.K else self.k


@dataclass(frozen=True)
class SweepRow:
    axis_value: float
    r: complex
    t: complex
    R: float
    T: float
    branch: str
    dr_abs: float | None = None
    dt_abs: float | None = None
    integer_n: bool | None = None

    @property
    def is_error(self) -> bool:
        return self.branch.startswith("error:")


@dataclass
class SweepTable:
    spec: SweepSpec
    rows: list[SweepRow] = field(default_factory=list)

    @property
    def axis_values(self) -> np.ndarray:
        return np.array([row.axis_value for row in self.rows])

    @property
    def R(self) -> np.ndarray:
        return np.array([row.R for row in self.rows])

    @property
    def T(self) -> np.ndarray:
        return np.array([row.T for row in self.rows])

    @property
    def branches(self) -> list[str]:
        return [row.branch for row in self.rows]

    def write_csv(self, fh) -> None:
        header = list(CSV_COLUMNS)
        if self.spec.oracle_check:
            header += ORACLE_COLUMNS
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in self.rows:
            values = [row.axis_value, row.r.real, row.r.imag, row.t.real, row.t.imag, row.R, row.T]
            line = [self.spec.axis.value] + [repr(float(v)) for v in values] + [row.branch]
            if self.spec.oracle_check:
                line += [repr(float(row.dr_abs)), repr(float(row.dt_abs))]
            writer.writerow(line)

    def to_csv(self, path=None) -> str | None:
        if path is None:
            buf = io.StringIO()
            self.write_csv(buf)
            return buf.getvalue()
        with open(path, "w", newline="") as fh:
            self.write_csv(fh)
        return None

    def summary(self) -> dict:
        """Row counts, T range over in-band rows, analytic loci and oracle maxima."""
        ok = [row for row in self.rows if not row.is_error]
        in_band = [row for row in ok if row.branch != "BandEdge"]
        T = np.array([row.T for row in in_band])
        out = {
            "rows": len(self.rows),
            "errors": len(self.rows) - len(ok),
            "band_edge": len(ok) - len(in_band),
            "T_min": float(T.min()) if T.size else math.nan,
            "T_max": float(T.max()) if T.size else math.nan,
            "loci": analytic_loci(self.spec),
        }
        if self.spec.oracle_check:
            dr = [row.dr_abs for row in ok if not math.isnan(row.dr_abs)]
            dt = [row.dt_abs for row in ok if not math.isnan(row.dt_abs)]
            out["max_dr"] = max(dr, default=math.nan)
            out["max_dt"] = max(dt, default=math.nan)
        return out


def worker_count() -> int:
    """Worker threads for oracle-checked sweeps, capped by ``WQED_THREADS``."""
    n = os.cpu_count() or 1
    cap = os.environ.get("WQED_THREADS")
    if cap:
        n = min(n, max(1, int(cap)))
    return n


def _evaluate(spec: SweepSpec, x: float) -> SweepRow:
    params = spec.params_at(x)
    k = spec.momentum_at(x)
    integer_n = None
    if spec.axis is Axis.GB2N and spec.base.g_b > 0:
        n_equiv = x / spec.base.g_b**2
        integer_n = bool(abs(n_equiv - round(n_equiv)) < 1e-9)
    nan = complex(math.nan, math.nan)
    try:
        res = scattering_amplitudes(params, make_point(params, k))
    except CavitySwitchError as exc:
        return SweepRow(x, nan, nan, math.nan, math.nan, f"error:{type(exc).__name__}",
                        math.nan if spec.oracle_check else None,
                        math.nan if spec.oracle_check else None, integer_n)
    dr = dt = None
    if spec.oracle_check:
        try:
            sol = solve_stationary(LatticeProblem(params), k)
            dr, dt = abs(sol.r_fit - res.r), abs(sol.t_fit - res.t)
        except CavitySwitchError:
            dr = dt = math.nan
    return SweepRow(x, res.r, res.t, res.R, res.T, res.branch.value, dr, dt, integer_n)


def run_sweep(spec: SweepSpec, workers: int | None = None) -> SweepTable:
    """Evaluate every grid sample of ``spec``; rows come back in axis order.

    Per-point failures are recorded as rows tagged ``error:<ExceptionName>``.
    Oracle-checked sweeps run on a thread pool of ``workers`` threads
    (default :func:`worker_count`).
    """
    grid = [float(x) for x in spec.grid()]
    if spec.oracle_check:
        workers = worker_count() if workers is None else workers
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda x: _evaluate(spec, x), grid))
    else:
        rows = [_evaluate(spec, x) for x in grid]
    return SweepTable(spec, rows)


def analytic_loci(spec: SweepSpec) -> dict:
    """Full-transmission and full-reflection positions on the sweep axis."""
    base = spec.base
    loci: dict[str, list[float]] = {"full_transmission": [], "full_reflection": []}
    if spec.axis is Axis.K:
        if base.n >= 1 and base.gb2n > 0:
            try:
                k = full_transmission_momenta(base)[0]
                loci["full_transmission"] = sorted({-k, k})
            except NoInBandSolution:
                pass
        loci["full_reflection"] = full_reflection_momenta(base)
    else:
        point = make_point(base, spec.k)
        da = point.delta_a
        if spec.axis is Axis.DELTA_B:
            if base.gb2n > 0:
                loci["full_transmission"] = [-da]
                if da != 0:
                    loci["full_reflection"] = [base.gb2n / da - da]
        else:
            x = da * (da + point.delta_b)
            if x >= 0:
                loci["full_reflection"] = [x]
            if da + point.delta_b == 0:
                loci["full_transmission"] = [spec.lo, spec.hi]
    lo, hi = spec.lo, spec.hi
    return {key: [v for v in vals if lo <= v <= hi] for key, vals in loci.items()}


def bisect_transmission(spec: SweepSpec, target: float, lo: float, hi: float, xtol: float = 1e-12) -> float:
    """Axis value in [lo, hi] where T equals ``target``, by bisection."""

    def excess(x):
        params = spec.params_at(x)
        return scattering_amplitudes(params, make_point(params, spec.momentum_at(x))).T - target

    return bisect(excess, lo, hi, xtol=xtol)


def _fig2(n: int, delta_b: float, name: str) -> SweepSpec:
    # omega_2 - omega_a = 2, xi = 2, g_b = 1; omega_b is a free constant.
    base = ModelParams(omega_a=0.0, omega_b=2.0, omega_2=2.0, omega_3=4.0, xi=2.0, g_b=1.0, n=n)
    return SweepSpec(base.with_delta_b(delta_b), Axis.K, -math.pi, math.pi, name=name)


def _fig3(delta_a: float, delta_b: float, k: float, xi: float, axis: Axis, lo, hi, name) -> SweepSpec:
    probe = ModelParams(omega_a=0.0, omega_b=2.0, omega_2=0.0, omega_3=2.0, xi=xi, g_b=1.0, n=1)
    omega_2 = delta_a + dispersion(probe, k)
    base = probe.replace(omega_2=omega_2).with_delta_b(delta_b)
    return SweepSpec(base, axis, lo, hi, k=k, name=name)


PRESETS: dict[str, SweepSpec] = {
    "fig2a": _fig2(1, 0.0, "fig2a"),
    "fig2b": _fig2(30, 0.0, "fig2b"),
    "fig2c": _fig2(1, -3.0, "fig2c"),
    "fig2d": _fig2(30, -3.0, "fig2d"),
    "fig2e": _fig2(0, 0.0, "fig2e"),
    "fig3a": _fig3(0.8, 0.0, math.pi / 4, 1.0, Axis.DELTA_B, -5.0, 5.0, "fig3a"),
    "fig3b": _fig3(-0.8, 0.0, math.pi / 4, 1.0, Axis.DELTA_B, -5.0, 5.0, "fig3b"),
    "fig3c": _fig3(1.0, 2.0, math.pi / 6, 2.0, Axis.GB2N, 0.0, 300.0, "fig3c"),
}


def preset(name: str, **overrides) -> SweepSpec:
    """A named figure preset, optionally with fields replaced."""
    try:
        spec = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return replace(spec, **overrides) if overrides else spec
