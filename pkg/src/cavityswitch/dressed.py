"""Dressed-state (effective V-type) picture of the driven cascade emitter.

The b-mode photons couple |2,n> and |3,n-1> with strength g_b sqrt(n). The two
eigenstates of that 2x2 block,

    |Psi_+-> = A_+- |2,n> + B_+- |3,n-1>,

turn the emitter into a V-type system whose two upper levels couple to the
waveguide with g_+- = g_a A_+-.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateBandEdge, PoleAtThisEnergy, RequiresControlPhotons
from .model import ModelParams, ScatteringPoint, check_point
from .scattering import (
    BRANCH_TOL,
    POLE_TOL,
    Branch,
    ScatteringResult,
    amplitudes_from_potential,
)

__all__ = [
    "DressedBasis",
    "ConditionReport",
    "dressed_basis",
    "effective_potential_dressed",
    "scattering_amplitudes_vtype",
    "condition_equivalence_check",
]


@dataclass(frozen=True)
class DressedBasis:
    omega_plus: float
    omega_minus: float
    A_plus: float
    A_minus: float
    B_plus: float
    B_minus: float
    g_plus: float
    g_minus: float
    delta_plus: float
    delta_minus: float

    @property
    def splitting(self) -> float:
        """omega_+ - omega_- = sqrt(delta_b^2 + 4 g_b^2 n)."""
        return self.delta_plus - self.delta_minus


def dressed_basis(params: ModelParams, point: ScatteringPoint) -> DressedBasis:
    """Dressed energies, mixing coefficients, couplings and detunings at ``point``.

    A_+ >= 0, A_- <= 0 and B_+- >= 0, which is the sign choice of the closed-form
    coefficients (s -+ delta_b)/sqrt(2 s (s -+ delta_b)) with
    s = sqrt(delta_b^2 + 4 g_b^2 n). They are evaluated as square roots of the
    equivalent weights (s -+ delta_b) / (2 s) so that neither branch loses
    precision when |delta_b| >> g_b sqrt(n).

    Raises:
        RequiresControlPhotons: n = 0, or g_b = delta_b = 0 so that the doublet
            is degenerate and the mixing is undefined.
    """
    check_point(params, point)
    if params.n < 1:
        raise RequiresControlPhotons("the dressed doublet needs n >= 1 control photons")
    db = point.delta_b
    coupling2 = 4.0 * params.gb2n
    s = math.hypot(db, 2.0 * params.g_b * math.sqrt(params.n))
    if s == 0.0:
        raise RequiresControlPhotons("g_b = 0 and delta_b = 0: dressed doublet is degenerate")
    # s - db and s + db without cancellation; their product is 4 g_b^2 n.
    if db >= 0:
        s_plus_db = s + db
        s_minus_db = coupling2 / s_plus_db
    else:
        s_minus_db = s - db
        s_plus_db = coupling2 / s_minus_db

    a_plus = math.sqrt(s_minus_db / (2.0 * s))
    a_minus = -math.sqrt(s_plus_db / (2.0 * s))
    b_plus = math.sqrt(s_plus_db / (2.0 * s))
    b_minus = math.sqrt(s_minus_db / (2.0 * s))

    centre = params.omega_2 + params.n * params.omega_b
    shift_plus = (db + s) / 2.0
    # (db - s)/2 = -(s - db)/2, written with the cancellation-free difference.
    shift_minus = -s_minus_db / 2.0
    return DressedBasis(
        omega_plus=centre + shift_plus,
        omega_minus=centre + shift_minus,
        A_plus=a_plus,
        A_minus=a_minus,
        B_plus=b_plus,
        B_minus=b_minus,
        g_plus=params.g_a * a_plus,
        g_minus=params.g_a * a_minus,
        delta_plus=point.delta_a + shift_plus,
        delta_minus=point.delta_a + shift_minus,
    )


def effective_potential_dressed(
    params: ModelParams, point: ScatteringPoint, basis: DressedBasis | None = None
) -> float:
    """V = -(g_+^2 / delta_+ + g_-^2 / delta_-).

    Raises:
        PoleAtThisEnergy: delta_+ or delta_- vanishes.
    """
    if basis is None:
        basis = dressed_basis(params, point)
    tol = POLE_TOL * params.g_a
    v = 0.0
    for g, d in ((basis.g_plus, basis.delta_plus), (basis.g_minus, basis.delta_minus)):
        if g == 0.0:
            continue
        if abs(d) < tol:
            raise PoleAtThisEnergy("photon resonant with a dressed level")
        v -= g * g / d
    return v


def scattering_amplitudes_vtype(
    params: ModelParams, point: ScatteringPoint, basis: DressedBasis | None = None
) -> ScatteringResult:
    """r, t for the photon scattering off the effective V-type emitter.

    The potential is carried as numerator -(g_+^2 delta_- + g_-^2 delta_+) over
    delta_+ delta_-, so a dressed resonance gives r = -1, t = 0 instead of
    overflowing.
    """
    if basis is None:
        basis = dressed_basis(params, point)
    sin_k = math.sin(point.k)
    # A level with zero coupling (g_b = 0) is a pure |3,n-1> state and drops out.
    levels = [
        (g * g, d)
        for g, d in ((basis.g_plus, basis.delta_plus), (basis.g_minus, basis.delta_minus))
        if g != 0.0
    ]
    if len(levels) == 2:
        (gp2, dp), (gm2, dm) = levels
        v_num = -(gp2 * dm + gm2 * dp)
        v_den = dp * dm
    else:
        (g2, d), = levels
        v_num, v_den = -g2, d

    if abs(sin_k) < BRANCH_TOL:
        if abs(v_num) < BRANCH_TOL:
            raise DegenerateBandEdge(f"band edge k={point.k} with vanishing V numerator")
        return ScatteringResult.from_amplitudes(-1.0, 0.0, Branch.BAND_EDGE)
    if len(levels) == 1:
        branch = Branch.TWO_LEVEL_N0
    elif abs(v_num) < BRANCH_TOL:
        return ScatteringResult.from_amplitudes(0.0, 1.0, Branch.FULL_TRANSMISSION)
    elif min(abs(d) for _, d in levels) < BRANCH_TOL:
        return ScatteringResult.from_amplitudes(-1.0, 0.0, Branch.FULL_REFLECTION)
    else:
        branch = Branch.GENERIC
    r, t = amplitudes_from_potential(v_num, v_den, params.xi, sin_k)
    return ScatteringResult.from_amplitudes(r, t, branch)


@dataclass(frozen=True)
class ConditionReport:
    """Residuals of the bare and dressed resonance conditions at one point.

    Reflection: delta_a (delta_a + delta_b) - g_b^2 n (bare) against
    delta_+ delta_- (dressed). Transmission: delta_a + delta_b (bare) against
    g_+^2 delta_- + g_-^2 delta_+ (dressed), i.e. delta_+/delta_- = -g_+^2/g_-^2.
    ``transmission_ratio_residual`` is delta_+/delta_- - g_+^2/g_-^2 without the
    minus sign; it is reported for reference and never vanishes on the
    transmission locus.
    """

    reflection_bare: float
    reflection_dressed: float
    transmission_bare: float
    transmission_dressed: float
    transmission_ratio_residual: float
    tol: float

    @property
    def reflection_bare_holds(self) -> bool:
        return abs(self.reflection_bare) < self.tol

    @property
    def reflection_dressed_holds(self) -> bool:
        return abs(self.reflection_dressed) < self.tol

    @property
    def transmission_bare_holds(self) -> bool:
        return abs(self.transmission_bare) < self.tol

    @property
    def transmission_dressed_holds(self) -> bool:
        return abs(self.transmission_dressed) < self.tol

    @property
    def consistent(self) -> bool:
        """True when each bare verdict matches its dressed counterpart."""
        return (
            self.reflection_bare_holds == self.reflection_dressed_holds
            and self.transmission_bare_holds == self.transmission_dressed_holds
        )


def condition_equivalence_check(
    params: ModelParams, point: ScatteringPoint, tol: float = 1e-9
) -> ConditionReport:
    basis = dressed_basis(params, point)
    da, db = point.delta_a, point.delta_b
    gp2, gm2 = basis.g_plus**2, basis.g_minus**2
    g2 = params.g_a**2
    if basis.delta_minus != 0.0 and gm2 != 0.0:
        ratio_residual = basis.delta_plus / basis.delta_minus - gp2 / gm2
    else:
        ratio_residual = math.inf
    return ConditionReport(
        reflection_bare=da * (da + db) - params.gb2n,
        reflection_dressed=basis.delta_plus * basis.delta_minus,
        transmission_bare=da + db,
        # g_+^2 delta_- + g_-^2 delta_+ = g_a^2 (delta_a + delta_b); divide out g_a^2
        # so both transmission residuals carry the same units.
        transmission_dressed=(gp2 * basis.delta_minus + gm2 * basis.delta_plus) / g2,
        transmission_ratio_residual=ratio_residual,
        tol=tol,
    )
