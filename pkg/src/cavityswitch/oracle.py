"""Position-space lattice checks of the closed-form amplitudes.

Both oracles work with the Hamiltonian restricted to the single-excitation
sector: one photon on site j with the emitter in |1,n>, the emitter in |2,n>
(``e2``) or in |3,n-1> (``e3``). Nothing here uses the closed-form r, t.

* :func:`solve_stationary` solves H psi = E psi on a finite chain with
  plane-wave boundary values substituted at the two outermost sites per side.
* :func:`run_wavepacket` launches a Gaussian packet at the emitter and counts
  what ends up on either side.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components
from scipy.sparse.linalg import splu

from .errors import BandEdgeError, BoundaryContamination, SingularSystem
from .model import ModelParams, dispersion, reduce_momentum

__all__ = [
    "LatticeProblem",
    "StationarySolution",
    "WavepacketSpec",
    "WavepacketRun",
    "build_hamiltonian",
    "solve_stationary",
    "run_wavepacket",
    "DEFAULT_HALF_LENGTH",
]

DEFAULT_HALF_LENGTH = 25
_MIN_STATIONARY_HALF_LENGTH = 10
_SIN_TOL = 1e-12
_COND_LIMIT = 1e13


@dataclass(frozen=True)
class LatticeProblem:
    """Finite chain of sites -L..L with the emitter in the cavity at site 0.

    ``emitter_coupled=False`` drops the g_a bond, leaving a free chain; it is
    used as a reference run for the wavepacket propagator.
    """

    params: ModelParams
    half_length: int = DEFAULT_HALF_LENGTH
    emitter_coupled: bool = True

    def __post_init__(self):
        if self.half_length < 2:
            raise ValueError(f"half_length must be >= 2, got {self.half_length}")

    @property
    def n_sites(self) -> int:
        return 2 * self.half_length + 1

    @property
    def dim(self) -> int:
        return self.n_sites + 2

    @property
    def e2(self) -> int:
        return self.n_sites

    @property
    def e3(self) -> int:
        return self.n_sites + 1

    @property
    def sites(self) -> np.ndarray:
        return np.arange(-self.half_length, self.half_length + 1)

    def site_index(self, j: int) -> int:
        if abs(j) > self.half_length:
            raise IndexError(f"site {j} outside chain of half-length {self.half_length}")
        return j + self.half_length

    @property
    def labels(self) -> list[str]:
        return [f"site{j}" for j in self.sites] + ["e2", "e3"]


def build_hamiltonian(problem: LatticeProblem) -> sp.csr_matrix:
    """Single-excitation Hamiltonian as a real symmetric sparse matrix.

    The photon-sector diagonal carries omega_a + n omega_b, so the emitter
    diagonals are omega_2 + n omega_b and omega_3 + (n - 1) omega_b.
    """
    p = problem.params
    L, ns = problem.half_length, problem.n_sites
    rows, cols, vals = [], [], []

    def add(i, j, v):
        rows.append(i)
        cols.append(j)
        vals.append(v)
        if i != j:
            rows.append(j)
            cols.append(i)
            vals.append(v)

    photon = p.omega_a + p.n * p.omega_b
    for i in range(ns):
        add(i, i, photon)
    for i in range(ns - 1):
        add(i, i + 1, -p.xi)
    add(problem.e2, problem.e2, p.omega_2 + p.n * p.omega_b)
    add(problem.e3, problem.e3, p.omega_3 + (p.n - 1) * p.omega_b)
    if problem.emitter_coupled:
        add(L, problem.e2, p.g_a)
    coupling = p.g_b * math.sqrt(p.n)
    if coupling != 0.0:
        add(problem.e2, problem.e3, coupling)
    return sp.csr_matrix((vals, (rows, cols)), shape=(problem.dim, problem.dim))


@dataclass(frozen=True)
class StationarySolution:
    k: float
    E: float
    alpha: np.ndarray
    beta: complex
    zeta: complex
    r_fit: complex
    t_fit: complex
    residual: float = field(default=0.0)

    @property
    def R(self) -> float:
        return abs(self.r_fit) ** 2

    @property
    def T(self) -> float:
        return abs(self.t_fit) ** 2


def solve_stationary(
    problem: LatticeProblem, k: float, hamiltonian: sp.spmatrix | None = None
) -> StationarySolution:
    """Scattering eigenstate at momentum ``k`` with r and t as unknowns.

    Sites -L and -L+1 are fixed to e^{ikj} + r e^{-ikj}, sites L-1 and L to
    t e^{ikj}. The remaining amplitudes together with r and t solve the
    eigen-equations of every row except the two chain ends, a square system of
    size 2L + 1 (2L when the upper level is decoupled).

    Raises:
        BandEdgeError: sin k = 0.
        SingularSystem: the linear system is singular at this energy.
    """
    L = problem.half_length
    if L < _MIN_STATIONARY_HALF_LENGTH:
        raise ValueError(f"stationary solve needs half_length >= {_MIN_STATIONARY_HALF_LENGTH}")
    k = reduce_momentum(float(k))
    if abs(math.sin(k)) < _SIN_TOL:
        raise BandEdgeError(f"k={k} is a band edge (zero group velocity)")
    p = problem.params
    E = p.n * p.omega_b + dispersion(p, k)
    H = build_hamiltonian(problem) if hamiltonian is None else hamiltonian
    dim, ns = problem.dim, problem.n_sites

    shifted = (H - E * sp.identity(dim, format="csr")).toarray()
    # With no g_b sqrt(n) bond the upper level is decoupled; it is never
    # populated, so zeta = 0 and its equation is dropped (it may sit at E).
    emitter = [problem.e2]
    if shifted[problem.e2, problem.e3] != 0.0:
        emitter.append(problem.e3)
    eq_rows = np.r_[1 : ns - 1, emitter]
    A = shifted[eq_rows]

    # psi = incoming + basis @ u with u = (alpha_{-L+2..L-2}, beta, [zeta], r, t).
    interior = np.arange(2, ns - 2)
    n_unknown = interior.size + len(emitter) + 2
    basis = np.zeros((dim, n_unknown), dtype=complex)
    basis[interior, np.arange(interior.size)] = 1.0
    for i, level in enumerate(emitter):
        basis[level, interior.size + i] = 1.0
    left = np.array([-L, -L + 1])
    right = np.array([L - 1, L])
    basis[left + L, n_unknown - 2] = np.exp(-1j * k * left)
    basis[right + L, n_unknown - 1] = np.exp(1j * k * right)
    incoming = np.zeros(dim, dtype=complex)
    incoming[left + L] = np.exp(1j * k * left)

    M = A @ basis
    rhs = -A @ incoming
    if np.linalg.cond(M) > _COND_LIMIT:
        raise SingularSystem(f"stationary system singular at k={k}, E={E}")
    try:
        u = scipy.linalg.solve(M, rhs)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgWarning) as exc:
        raise SingularSystem(str(exc)) from exc

    psi = incoming + basis @ u
    residual = float(np.max(np.abs(A @ psi)))
    return StationarySolution(
        k=k,
        E=E,
        alpha=psi[:ns],
        beta=complex(psi[problem.e2]),
        zeta=complex(psi[problem.e3]),
        r_fit=complex(u[-2]),
        t_fit=complex(u[-1]),
        residual=residual,
    )


@dataclass(frozen=True)
class WavepacketSpec:
    """Inputs of one wavepacket scattering run.

    ``dt`` is the integrator step (default 0.02/xi); the spectral propagator is
    exact at any time and uses it only to round the record times. ``j0``
    defaults to half-way between the emitter and the chain end on the side the
    packet comes from. ``t_final`` defaults to the time the packet needs to
    travel |j0| + buffer + 6 sigma sites at the group velocity 2 xi |sin k0|,
    plus 20%.
    """

    params: ModelParams
    k0: float
    sigma: float = 15.0
    chain_length: int = 2001
    j0: int | None = None
    dt: float | None = None
    t_final: float | None = None
    buffer: int = 10
    method: str = "spectral"
    emitter_coupled: bool = True
    n_records: int = 201
    edge_width: int = 10
    edge_threshold: float = 1e-6


@dataclass(frozen=True)
class WavepacketRun:
    """Time record of a wavepacket run.

    ``p_scatterer`` is the photon probability on sites |j| <= buffer; the
    residual near the scatterer also includes |beta|^2 and |zeta|^2.
    """

    chain_length: int
    k0: float
    sigma: float
    j0: int
    dt: float
    t_final: float
    buffer: int
    method: str
    times: np.ndarray
    norm: np.ndarray
    p_left: np.ndarray
    p_right: np.ndarray
    p_scatterer: np.ndarray
    beta2: np.ndarray
    zeta2: np.ndarray
    T_measured: float
    R_measured: float

    @property
    def residual(self) -> float:
        return float(self.p_scatterer[-1] + self.beta2[-1] + self.zeta2[-1])

    @property
    def norm_drift(self) -> float:
        return float(np.max(np.abs(self.norm - 1.0)))

    @property
    def max_zeta(self) -> float:
        return float(np.sqrt(np.max(self.zeta2)))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["time", "norm", "P_left", "P_right", "P_scatterer", "|beta|^2", "|zeta|^2"])
            for row in zip(
                self.times, self.norm, self.p_left, self.p_right, self.p_scatterer, self.beta2, self.zeta2
            ):
                writer.writerow([repr(float(x)) for x in row])


def _validate(spec: WavepacketSpec) -> tuple[int, int]:
    if spec.sigma < 8:
        raise ValueError(f"sigma must be >= 8 sites, got {spec.sigma}")
    if spec.chain_length < 20 * spec.sigma:
        raise ValueError(f"chain_length must be >= 20*sigma = {20 * spec.sigma}")
    if not 0 < abs(spec.k0) < math.pi:
        raise ValueError(f"need 0 < |k0| < pi, got {spec.k0}")
    if abs(math.sin(spec.k0)) < 0.2:
        raise ValueError(f"|sin k0| must be >= 0.2, got {abs(math.sin(spec.k0)):.3g}")
    if spec.method not in ("spectral", "crank-nicolson"):
        raise ValueError(f"unknown method {spec.method!r}")
    L = (spec.chain_length - 1) // 2
    direction = 1 if spec.k0 > 0 else -1
    j0 = -direction * (L // 2) if spec.j0 is None else int(spec.j0)
    if j0 * direction >= 0:
        raise ValueError("the packet must start on the side it moves away from")
    if abs(j0) - spec.buffer < 5 * spec.sigma or L - abs(j0) < 6 * spec.sigma:
        raise ValueError(f"launch centre j0={j0} too close to the emitter or a chain end")
    return L, j0


def _initial_packet(L: int, j0: int, sigma: float, k0: float, dim: int) -> np.ndarray:
    j = np.arange(-L, L + 1)
    psi = np.zeros(dim, dtype=complex)
    psi[: j.size] = np.exp(-((j - j0) ** 2) / (4.0 * sigma**2) + 1j * k0 * j)
    return psi / np.linalg.norm(psi)


def _spectral_states(H: sp.csr_matrix, psi0: np.ndarray, times: np.ndarray) -> np.ndarray:
    """Exact evolution by diagonalising each connected block of H separately.

    Blocks that start empty are never touched, so a decoupled level keeps an
    amplitude of exactly zero.
    """
    n_comp, labels = connected_components(H, directed=False)
    states = np.zeros((times.size, psi0.size), dtype=complex)
    for c in range(n_comp):
        idx = np.flatnonzero(labels == c)
        if not np.any(psi0[idx]):
            continue
        block = H[idx][:, idx].toarray()
        energies, vecs = np.linalg.eigh(block)
        coeffs = vecs.T @ psi0[idx]
        phases = np.exp(-1j * np.outer(times, energies))
        states[:, idx] = (phases * coeffs) @ vecs.T
    return states


def _crank_nicolson_states(H: sp.csr_matrix, psi0: np.ndarray, dt: float, steps: np.ndarray) -> np.ndarray:
    dim = psi0.size
    eye = sp.identity(dim, format="csc", dtype=complex)
    implicit = splu((eye + 0.5j * dt * H).tocsc())
    explicit = (eye - 0.5j * dt * H).tocsr()
    states = np.zeros((steps.size, dim), dtype=complex)
    psi = psi0.copy()
    step = 0
    for i, target in enumerate(steps):
        while step < target:
            psi = implicit.solve(explicit @ psi)
            step += 1
        states[i] = psi
    return states


def run_wavepacket(spec: WavepacketSpec) -> WavepacketRun:
    """Scatter a Gaussian packet off the emitter and measure T and R.

    The packet is exp(-(j - j0)^2 / (4 sigma^2) + i k0 j), normalised, with both
    emitter amplitudes zero. T is the final probability beyond ``buffer`` sites
    on the far side of the emitter, R the same on the launch side.

    Raises:
        BoundaryContamination: more than ``edge_threshold`` probability sat in
            the outermost ``edge_width`` sites at some recorded time.
    """
    L, j0 = _validate(spec)
    p = spec.params
    problem = LatticeProblem(p, half_length=L, emitter_coupled=spec.emitter_coupled)
    H = build_hamiltonian(problem)
    dt = 0.02 / p.xi if spec.dt is None else float(spec.dt)
    group_velocity = 2.0 * p.xi * abs(math.sin(spec.k0))
    if spec.t_final is None:
        distance = abs(j0) + spec.buffer + 6.0 * spec.sigma
        t_final = 1.2 * distance / group_velocity
    else:
        t_final = float(spec.t_final)
    n_steps = max(1, math.ceil(t_final / dt))
    t_final = n_steps * dt
    steps = np.unique(np.round(np.linspace(0, n_steps, spec.n_records)).astype(int))
    times = steps * dt

    psi0 = _initial_packet(L, j0, spec.sigma, spec.k0, problem.dim)
    if spec.method == "spectral":
        states = _spectral_states(H, psi0, times)
    else:
        states = _crank_nicolson_states(H, psi0, dt, steps)

    prob = np.abs(states) ** 2
    sites = prob[:, : problem.n_sites]
    j = problem.sites
    p_left = sites[:, j < -spec.buffer].sum(axis=1)
    p_right = sites[:, j > spec.buffer].sum(axis=1)
    p_scatterer = sites[:, np.abs(j) <= spec.buffer].sum(axis=1)
    edge = sites[:, : spec.edge_width].sum(axis=1) + sites[:, -spec.edge_width :].sum(axis=1)
    worst = float(edge.max())
    if worst > spec.edge_threshold:
        raise BoundaryContamination(
            f"edge probability {worst:.3g} exceeds {spec.edge_threshold:g}; use a longer chain"
        )

    if spec.k0 > 0:
        T, R = float(p_right[-1]), float(p_left[-1])
    else:
        T, R = float(p_left[-1]), float(p_right[-1])
    return WavepacketRun(
        chain_length=problem.n_sites,
        k0=spec.k0,
        sigma=spec.sigma,
        j0=j0,
        dt=dt,
        t_final=t_final,
        buffer=spec.buffer,
        method=spec.method,
        times=times,
        norm=prob.sum(axis=1),
        p_left=p_left,
        p_right=p_right,
        p_scatterer=p_scatterer,
        beta2=prob[:, problem.e2],
        zeta2=prob[:, problem.e3],
        T_measured=T,
        R_measured=R,
    )
