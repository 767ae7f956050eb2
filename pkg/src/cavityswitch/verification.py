"""Randomised property suites that cross-check the closed forms and oracles."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .dressed import condition_equivalence_check, dressed_basis, scattering_amplitudes_vtype
from .errors import CavitySwitchError
from .model import ModelParams, make_point
from .oracle import LatticeProblem, WavepacketSpec, run_wavepacket, solve_stationary
from .scattering import scattering_amplitudes
from .sweep import bisect_transmission, preset

__all__ = [
    "SuiteResult",
    "VerificationReport",
    "DEFAULT_SIZES",
    "random_points",
    "packet_averaged_transmission",
    "wavepacket_spot_points",
    "suite_unitarity",
    "suite_dressed_equivalence",
    "suite_conditions",
    "suite_stationary",
    "suite_wavepacket",
    "run_verification",
]

DEFAULT_SIZES = {"unitarity": 100_000, "dressed": 10_000, "conditions": 2_000, "stationary": 100}

UNITARITY_TOL = 1e-12
EQUIVALENCE_TOL = 1e-10
STATIONARY_TOL = 1e-10
WAVEPACKET_TOL = 0.03


@dataclass
class SuiteResult:
    name: str
    count: int
    failures: int
    max_residual: float
    tolerance: float
    elapsed: float
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"{verdict} {self.name}: n={self.count} failures={self.failures} "
            f"max_residual={self.max_residual:.12g} tol={self.tolerance:g} ({self.elapsed:.2f}s)"
        )


@dataclass
class VerificationReport:
    seed: int
    suites: list[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def lines(self, timings: bool = True) -> list[str]:
        out = []
        for s in self.suites:
            line = s.line()
            if not timings:
                line = line.rsplit(" (", 1)[0]
            out.append(line)
            out.extend(f"    {note}" for note in s.notes)
        out.append(f"overall: {'PASS' if self.passed else 'FAIL'} (seed={self.seed})")
        return out


def random_points(rng: np.random.Generator, count: int, min_n: int = 0):
    """Random (params, k) pairs in the unit-scale regime, away from band edges."""
    omega_2 = rng.uniform(-4, 4, count)
    omega_b = rng.uniform(0, 4, count)
    omega_3 = omega_2 + omega_b + rng.uniform(-4, 4, count)
    omega_a = rng.uniform(-3, 3, count)
    xi = rng.uniform(0.2, 3, count)
    g_a = rng.uniform(0.2, 3, count)
    g_b = rng.uniform(0.05, 3, count)
    n = rng.integers(min_n, 41, count)
    k = rng.uniform(-math.pi, math.pi, count)
    edge = np.abs(np.sin(k)) < 1e-3
    while edge.any():
        k[edge] = rng.uniform(-math.pi, math.pi, edge.sum())
        edge = np.abs(np.sin(k)) < 1e-3
    for i in range(count):
        params = ModelParams(
            omega_a=float(omega_a[i]),
            omega_b=float(omega_b[i]),
            omega_2=float(omega_2[i]),
            omega_3=float(omega_3[i]),
            xi=float(xi[i]),
            g_a=float(g_a[i]),
            g_b=float(g_b[i]),
            n=int(n[i]),
        )
        yield params, float(k[i])


def packet_averaged_transmission(params: ModelParams, k0: float, sigma: float, samples: int = 4001) -> float:
    """|t(k)|^2 averaged over the momentum distribution exp(-2 sigma^2 (k-k0)^2) of a Gaussian packet."""
    half = 8.0 / (2.0 * sigma)
    ks = np.linspace(k0 - half, k0 + half, samples)
    weights = np.exp(-2.0 * sigma**2 * (ks - k0) ** 2)
    T = np.array([scattering_amplitudes(params, make_point(params, k)).T for k in ks])
    return float(np.sum(weights * T) / np.sum(weights))


def suite_unitarity(rng, count: int = DEFAULT_SIZES["unitarity"]) -> SuiteResult:
    start = time.perf_counter()
    worst, failures, evaluated = 0.0, 0, 0
    for params, k in random_points(rng, count):
        res = scattering_amplitudes(params, make_point(params, k))
        evaluated += 1
        resid = abs(res.R + res.T - 1.0)
        worst = max(worst, resid)
        failures += resid >= UNITARITY_TOL
    return SuiteResult("unitarity", evaluated, failures, worst, UNITARITY_TOL, time.perf_counter() - start)


def suite_dressed_equivalence(rng, count: int = DEFAULT_SIZES["dressed"]) -> SuiteResult:
    start = time.perf_counter()
    worst, failures = 0.0, 0
    for params, k in random_points(rng, count, min_n=1):
        point = make_point(params, k)
        bare = scattering_amplitudes(params, point)
        vtype = scattering_amplitudes_vtype(params, point, dressed_basis(params, point))
        resid = max(abs(bare.r - vtype.r), abs(bare.t - vtype.t))
        worst = max(worst, resid)
        failures += resid >= EQUIVALENCE_TOL
    return SuiteResult("dressed-equivalence", count, failures, worst, EQUIVALENCE_TOL,
                       time.perf_counter() - start)


def _on_reflection_locus(params: ModelParams, k: float, sign: int) -> ModelParams:
    """Shift omega_2 so the photon at k is resonant with one dressed level."""
    db = params.delta_b
    root = math.sqrt(db * db + 4 * params.gb2n)
    da = (-db + sign * root) / 2.0
    omega_k = params.omega_a - 2 * params.xi * math.cos(k)
    moved = params.replace(omega_2=omega_k + da)
    return moved.with_delta_b(db)


def _on_transmission_locus(params: ModelParams, k: float) -> ModelParams:
    da = make_point(params, k).delta_a
    return params.with_delta_b(-da)


def suite_conditions(rng, count: int = DEFAULT_SIZES["conditions"]) -> SuiteResult:
    """Bare and dressed resonance conditions agree on constructed and random points.

    A third of the points sit on the reflection locus, a third on the
    transmission locus and a third are generic. Residual reported is the
    largest |bare - dressed| difference of the condition functions.
    """
    start = time.perf_counter()
    worst, failures = 0.0, 0
    for i, (params, k) in enumerate(random_points(rng, count, min_n=1)):
        kind = i % 3
        if kind == 0:
            params = _on_reflection_locus(params, k, 1 if i % 2 else -1)
        elif kind == 1:
            params = _on_transmission_locus(params, k)
        report = condition_equivalence_check(params, make_point(params, k))
        diff = max(
            abs(report.reflection_bare - report.reflection_dressed),
            abs(report.transmission_bare - report.transmission_dressed),
        )
        worst = max(worst, diff)
        expected = {0: report.reflection_bare_holds, 1: report.transmission_bare_holds, 2: True}[kind]
        failures += (not report.consistent) or (not expected) or diff >= 1e-9
    return SuiteResult("condition-equivalence", count, failures, worst, 1e-9, time.perf_counter() - start)


def suite_stationary(rng, count: int = DEFAULT_SIZES["stationary"], half_length: int = 25) -> SuiteResult:
    start = time.perf_counter()
    worst, failures, skipped = 0.0, 0, 0
    for params, k in random_points(rng, count):
        closed = scattering_amplitudes(params, make_point(params, k))
        try:
            sol = solve_stationary(LatticeProblem(params, half_length), k)
        except CavitySwitchError:
            skipped += 1
            continue
        resid = max(abs(sol.r_fit - closed.r), abs(sol.t_fit - closed.t))
        worst = max(worst, resid)
        failures += resid >= STATIONARY_TOL
    result = SuiteResult("stationary-oracle", count - skipped, failures, worst, STATIONARY_TOL,
                         time.perf_counter() - start)
    if skipped:
        result.notes.append(f"{skipped} singular points skipped")
    return result


def wavepacket_spot_points() -> list[tuple[str, ModelParams, float]]:
    """Full transmission, full reflection (n = 0) and a T = 1/2 point."""
    fig2a = preset("fig2a")
    transmission = ("full-transmission fig2a", fig2a.base, 2 * math.pi / 3)

    fig3a = preset("fig3a")
    k = fig3a.k
    omega_k = fig3a.base.omega_a - 2 * fig3a.base.xi * math.cos(k)
    two_level = fig3a.base.replace(n=0, omega_2=omega_k)
    reflection = ("full-reflection n=0", two_level, k)

    # T decreases monotonically from 1 at delta_b = -0.8 to 0 at delta_b = 0.45.
    half = bisect_transmission(fig3a, 0.5, -0.8, 0.45)
    generic = ("half-transmission fig3a", fig3a.params_at(half), k)
    return [transmission, reflection, generic]


def suite_wavepacket(sigma: float = 15.0, chain_length: int = 2001) -> SuiteResult:
    start = time.perf_counter()
    worst, failures = 0.0, 0
    notes = []
    for label, params, k0 in wavepacket_spot_points():
        run = run_wavepacket(WavepacketSpec(params, k0, sigma=sigma, chain_length=chain_length))
        expected = scattering_amplitudes(params, make_point(params, k0)).T
        resid = abs(run.T_measured - expected)
        worst = max(worst, resid)
        bad = resid > WAVEPACKET_TOL or run.norm_drift >= 1e-8
        if params.n == 0:
            bad = bad or run.max_zeta != 0.0
        failures += bad
        notes.append(
            f"{label}: T_measured={run.T_measured:.12g} |t(k0)|^2={expected:.12g} "
            f"norm_drift={run.norm_drift:.3g} max|zeta|={run.max_zeta:.3g}"
        )
    return SuiteResult("wavepacket", 3, failures, worst, WAVEPACKET_TOL, time.perf_counter() - start, notes)


def run_verification(seed: int = 0, sizes: dict | None = None, with_wavepacket: bool = False) -> VerificationReport:
    sizes = {**DEFAULT_SIZES, **(sizes or {})}
    suites = [
        suite_unitarity(np.random.default_rng([seed, 1]), sizes["unitarity"]),
        suite_dressed_equivalence(np.random.default_rng([seed, 2]), sizes["dressed"]),
        suite_conditions(np.random.default_rng([seed, 3]), sizes["conditions"]),
        suite_stationary(np.random.default_rng([seed, 4]), sizes["stationary"]),
    ]
    if with_wavepacket:
        suites.append(suite_wavepacket())
    return VerificationReport(seed, suites)
