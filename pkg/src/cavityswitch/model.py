"""Physical parameters, the cosine band of the coupled-cavity waveguide and detunings.

Every frequency is expressed in units of the lower-transition coupling ``g_a``
and ``hbar = 1``. The ground state of the emitter is the energy reference, so
level |1> has zero energy and is not stored.
"""

from __future__ import annotations

import json
import math
import numbers
import warnings
from dataclasses import asdict, dataclass, fields

import numpy as np

from .errors import InvalidParameters, InvalidPoint

__all__ = [
    "ModelParams",
    "ScatteringPoint",
    "RWAReport",
    "RWA_THRESHOLD",
    "reduce_momentum",
    "dispersion",
    "make_point",
    "check_point",
    "rwa_validity",
    "invert_dispersion",
]

# g_b*sqrt(n) above this fraction of min(omega_2, omega_3) is reported as
# outside the rotating-wave regime.
RWA_THRESHOLD = 0.1

# Absolute tolerance used when checking that a point was built from given params.
_POINT_TOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the waveguide, the control cavity and the cascade emitter.

    Attributes:
        omega_a: frequency of every waveguide cavity mode a_j.
        omega_b: frequency of the control cavity mode b.
        omega_2: energy of emitter level |2>.
        omega_3: energy of emitter level |3>.
        xi: nearest-neighbour hopping strength (lattice spacing 1).
        g_a: coupling of |1> <-> |2> to the mode a_0; the energy unit.
        g_b: coupling of |2> <-> |3> to the mode b.
        n: number of b-mode photons in the initial state.
    """

    omega_a: float
    omega_b: float
    omega_2: float
    omega_3: float
    xi: float
    g_a: float = 1.0
    g_b: float = 0.0
    n: int = 0

    def __post_init__(self):
        for f in fields(self):
            if f.name == "n":
                continue
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, numbers.Real):
                raise InvalidParameters(f"{f.name} must be a real number, got {value!r}")
            value = float(value)
            if not math.isfinite(value):
                raise InvalidParameters(f"{f.name} must be finite, got {value!r}")
            object.__setattr__(self, f.name, value)

        n = self.n
        if isinstance(n, bool) or not isinstance(n, numbers.Real):
            raise InvalidParameters(f"n must be a non-negative integer, got {n!r}")
        if isinstance(n, numbers.Integral):
            n = int(n)
        elif float(n).is_integer():
            n = int(n)
        else:
            raise InvalidParameters(f"n must be a non-negative integer, got {n!r}")
        if n < 0:
            raise InvalidParameters(f"n must be >= 0, got {n}")
        object.__setattr__(self, "n", n)

        if self.g_a <= 0:
            raise InvalidParameters(f"g_a must be > 0, got {self.g_a}")
        if self.g_b < 0:
            raise InvalidParameters(f"g_b must be >= 0, got {self.g_b}")
        if self.xi <= 0:
            raise InvalidParameters(f"xi must be > 0, got {self.xi}")

    @property
    def omega_32(self) -> float:
        """Transition frequency of |2> <-> |3>."""
        return self.omega_3 - self.omega_2

    @property
    def delta_b(self) -> float:
        """Detuning of the control photon from the upper transition."""
        return self.omega_32 - self.omega_b

    @property
    def band(self) -> tuple[float, float]:
        """Lower and upper edge of the photon band."""
        return self.omega_a - 2.0 * self.xi, self.omega_a + 2.0 * self.xi

    @property
    def gb2n(self) -> float:
        """Squared effective coupling g_b**2 * n of |2,n> <-> |3,n-1>."""
        return self.g_b * self.g_b * self.n

    def replace(self, **changes) -> "ModelParams":
        data = self.to_dict()
        data.update(changes)
        return ModelParams(**data)

    def with_delta_b(self, delta_b: float) -> "ModelParams":
        """Copy with omega_3 moved so that the control detuning equals ``delta_b``."""
        return self.replace(omega_3=self.omega_2 + self.omega_b + delta_b)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ModelParams":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidParameters(f"unknown parameter keys: {sorted(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise InvalidParameters(str(exc)) from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> "ModelParams":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise InvalidParameters("parameter JSON must be an object")
        return cls.from_dict(data)


@dataclass(frozen=True)
class ScatteringPoint:
    """A photon momentum together with its energy and detunings.

    ``k`` lies in (-pi, pi]; ``E`` is the total single-excitation energy
    n*omega_b + Omega_k.
    """

    k: float
    Omega_k: float
    E: float
    delta_a: float
    delta_b: float


def reduce_momentum(k: float) -> float:
    """Map ``k`` onto the principal domain (-pi, pi]."""
    if not math.isfinite(k):
        raise InvalidPoint(f"momentum must be finite, got {k!r}")
    return math.pi - (math.pi - k) % (2 * math.pi)


def dispersion(params: ModelParams, k):
    """Band energy omega_a - 2 xi cos k. Accepts scalars or numpy arrays."""
    if isinstance(k, numbers.Real):
        if not math.isfinite(k):
            raise InvalidPoint(f"momentum must be finite, got {k!r}")
        return params.omega_a - 2.0 * params.xi * math.cos(k)
    return params.omega_a - 2.0 * params.xi * np.cos(k)


def make_point(params: ModelParams, k: float) -> ScatteringPoint:
    k = reduce_momentum(float(k))
    omega_k = dispersion(params, k)
    return ScatteringPoint(
        k=k,
        Omega_k=omega_k,
        E=params.n * params.omega_b + omega_k,
        delta_a=params.omega_2 - omega_k,
        delta_b=params.delta_b,
    )


def check_point(params: ModelParams, point: ScatteringPoint) -> None:
    """Raise :class:`InvalidPoint` unless ``point`` was built from ``params``."""
    if not -math.pi < point.k <= math.pi:
        raise InvalidPoint(f"k={point.k} outside (-pi, pi]")
    expected = make_point(params, point.k)
    scale = 1.0 + abs(params.omega_a) + 2 * params.xi + params.n * abs(params.omega_b)
    scale += abs(params.omega_2) + abs(params.omega_3)
    for name in ("Omega_k", "E", "delta_a", "delta_b"):
        got, want = getattr(point, name), getattr(expected, name)
        if not abs(got - want) <= _POINT_TOL * scale:
            raise InvalidPoint(f"{name}={got} does not match params (expected {want})")


@dataclass(frozen=True)
class RWAReport:
    ratio: float
    valid: bool
    threshold: float = RWA_THRESHOLD


def rwa_validity(params: ModelParams, warn: bool = False) -> RWAReport:
    """Report g_b*sqrt(n) / min(omega_2, omega_3) against :data:`RWA_THRESHOLD`.

    This never blocks a computation. With ``warn=True`` an invalid report also
    emits a :class:`UserWarning`.
    """
    coupling = params.g_b * math.sqrt(params.n)
    if coupling == 0.0:
        ratio = 0.0
    else:
        floor = min(params.omega_2, params.omega_3)
        ratio = coupling / floor if floor > 0 else math.inf
    report = RWAReport(ratio=ratio, valid=ratio <= RWA_THRESHOLD)
    if warn and not report.valid:
        warnings.warn(
            f"g_b*sqrt(n)/min(omega_2, omega_3) = {ratio:.3g} exceeds {RWA_THRESHOLD}; "
            "the rotating-wave Hamiltonian may be inaccurate",
            stacklevel=2,
        )
    return report


def invert_dispersion(params: ModelParams, omega: float) -> float | None:
    """Momentum in [0, pi] whose band energy is ``omega``, or None outside the band."""
    c = (params.omega_a - omega) / (2.0 * params.xi)
    if not -1.0 <= c <= 1.0:
        return None
    return math.acos(c)
