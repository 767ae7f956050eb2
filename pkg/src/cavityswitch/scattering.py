"""Closed-form single-photon reflection and transmission at the emitter cell.

The emitter sits in the cavity at site 0 and acts on the photon as an
energy-dependent on-site potential. Matching plane waves on both sides of that
site gives the amplitudes

    r = -g_a^2 S / (2 i xi P sin k + g_a^2 S),
    t = 2 i xi P sin k / (2 i xi P sin k + g_a^2 S),

with S = delta_a + delta_b and P = delta_a * S - g_b^2 n. Note that t = 1 + r.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import (
    DegenerateBandEdge,
    NoInBandSolution,
    PoleAtThisEnergy,
    RequiresControlPhotons,
)
from .model import ModelParams, ScatteringPoint, check_point, invert_dispersion, reduce_momentum

__all__ = [
    "Branch",
    "ScatteringResult",
    "BRANCH_TOL",
    "POLE_TOL",
    "effective_potential",
    "scattering_amplitudes",
    "amplitudes_from_potential",
    "is_full_transmission",
    "full_transmission_momenta",
    "is_full_reflection",
    "full_reflection_momenta",
    "required_gb2n",
]

# |sin k|, |S| and |P| below this are treated as exactly zero when tagging branches.
BRANCH_TOL = 1e-12
# |denominator of V| below this (in units of g_a^2) is reported as a pole.
POLE_TOL = 1e-12


class Branch(str, enum.Enum):
    GENERIC = "Generic"
    TWO_LEVEL_N0 = "TwoLevelN0"
    BAND_EDGE = "BandEdge"
    FULL_TRANSMISSION = "FullTransmission"
    FULL_REFLECTION = "FullReflection"


@dataclass(frozen=True)
class ScatteringResult:
    r: complex
    t: complex
    R: float
    T: float
    branch: Branch

    @classmethod
    def from_amplitudes(cls, r: complex, t: complex, branch: Branch) -> "ScatteringResult":
        r, t = complex(r), complex(t)
        return cls(r=r, t=t, R=abs(r) ** 2, T=abs(t) ** 2, branch=branch)


_REFLECTED = (complex(-1.0), complex(0.0))
_TRANSMITTED = (complex(0.0), complex(1.0))


def effective_potential(params: ModelParams, point: ScatteringPoint) -> float:
    """On-site potential the emitter imposes on the photon at site 0.

    Evaluated directly in terms of the total energy ``point.E``. With no control
    coupling (g_b^2 n = 0) the cancelled two-level form g_a^2 / (E - omega_2) is
    used.

    Raises:
        PoleAtThisEnergy: the photon is resonant with a (dressed) emitter level.
    """
    check_point(params, point)
    g2 = params.g_a**2
    E, n = point.E, params.n
    lower = E - (params.omega_2 + n * params.omega_b)
    if params.gb2n == 0.0:
        if abs(lower) < POLE_TOL * g2:
            raise PoleAtThisEnergy(f"E={E} is resonant with |2,n>")
        return g2 / lower
    upper = E - (params.omega_3 + (n - 1) * params.omega_b)
    denom = lower * upper - params.gb2n
    if abs(denom) < POLE_TOL * g2:
        raise PoleAtThisEnergy(f"E={E} is resonant with a dressed level")
    return g2 * upper / denom


def amplitudes_from_potential(v_num: float, v_den: float, xi: float, sin_k: float):
    """r, t for an on-site potential V = v_num / v_den at site 0.

    Written without dividing by ``v_den`` so a pole (v_den = 0) gives the finite
    total-reflection limit.
    """
    hop = 2j * xi * sin_k * v_den
    denom = hop - v_num
    return v_num / denom, hop / denom


def scattering_amplitudes(params: ModelParams, point: ScatteringPoint) -> ScatteringResult:
    """Reflection and transmission amplitudes at ``point``.

    Raises:
        InvalidPoint: ``point`` was not built from ``params``.
        DegenerateBandEdge: sin k = 0 and delta_a + delta_b = 0 with control
            photons present, so both terms of the denominator vanish.
    """
    check_point(params, point)
    g2 = params.g_a**2
    xi = params.xi
    sin_k = math.sin(point.k)
    da, db = point.delta_a, point.delta_b

    if params.gb2n == 0.0:
        # |3> never participates; the common factor (delta_a + delta_b) cancels.
        if abs(sin_k) < BRANCH_TOL:
            return ScatteringResult.from_amplitudes(*_REFLECTED, Branch.BAND_EDGE)
        if abs(da) < BRANCH_TOL:
            return ScatteringResult.from_amplitudes(*_REFLECTED, Branch.TWO_LEVEL_N0)
        hop = 2j * xi * da * sin_k
        denom = hop + g2
        return ScatteringResult.from_amplitudes(-g2 / denom, hop / denom, Branch.TWO_LEVEL_N0)

    s = da + db
    p = da * s - params.gb2n
    if abs(sin_k) < BRANCH_TOL:
        if abs(s) < BRANCH_TOL:
            raise DegenerateBandEdge(
                f"band edge k={point.k} with delta_a + delta_b = 0: scattering undefined"
            )
        return ScatteringResult.from_amplitudes(*_REFLECTED, Branch.BAND_EDGE)
    if abs(s) < BRANCH_TOL:
        return ScatteringResult.from_amplitudes(*_TRANSMITTED, Branch.FULL_TRANSMISSION)
    if abs(p) < BRANCH_TOL:
        return ScatteringResult.from_amplitudes(*_REFLECTED, Branch.FULL_REFLECTION)

    hop = 2j * xi * p * sin_k
    denom = hop + g2 * s
    return ScatteringResult.from_amplitudes(-g2 * s / denom, hop / denom, Branch.GENERIC)


def _require_control_photons(params: ModelParams) -> None:
    if params.n < 1:
        raise RequiresControlPhotons("full transmission needs at least one control photon (n >= 1)")


def is_full_transmission(params: ModelParams, point: ScatteringPoint, tol: float = 1e-9) -> bool:
    """Whether delta_a + delta_b = 0 at ``point`` (requires n >= 1)."""
    _require_control_photons(params)
    return abs(point.delta_a + point.delta_b) < tol


def full_transmission_momenta(params: ModelParams) -> tuple[float, float]:
    """The momenta +-k at which delta_a + delta_b = 0 for the fixed control detuning.

    Raises:
        NoInBandSolution: the required photon energy omega_2 + delta_b is outside
            the band.
    """
    _require_control_photons(params)
    omega = params.omega_2 + params.delta_b
    k = invert_dispersion(params, omega)
    if k is None:
        raise NoInBandSolution(
            f"full transmission needs Omega_k={omega}, outside band {params.band}"
        )
    return k, -k


def required_gb2n(params: ModelParams, point: ScatteringPoint) -> float:
    """Value of g_b^2 n that puts ``point`` on the full-reflection locus."""
    return point.delta_a * (point.delta_a + point.delta_b)


def is_full_reflection(params: ModelParams, point: ScatteringPoint, tol: float = 1e-9) -> bool:
    """Whether delta_a (delta_a + delta_b) = g_b^2 n; reduces to delta_a = 0 without control coupling."""
    if params.gb2n == 0.0:
        return abs(point.delta_a) < tol
    return abs(required_gb2n(params, point) - params.gb2n) < tol


def full_reflection_momenta(params: ModelParams) -> list[float]:
    """All momenta in (-pi, pi] on the full-reflection locus, sorted ascending.

    The locus is quadratic in delta_a, so there are up to two photon energies
    and hence up to four momenta.
    """
    if params.gb2n == 0.0:
        detunings = [0.0]
    else:
        db = params.delta_b
        root = math.sqrt(db * db + 4.0 * params.gb2n)
        detunings = [(-db + root) / 2.0, (-db - root) / 2.0]
    momenta = set()
    for da in detunings:
        k = invert_dispersion(params, params.omega_2 - da)
        if k is not None:
            momenta.add(reduce_momentum(k))
            momenta.add(reduce_momentum(-k))
    return sorted(momenta)
