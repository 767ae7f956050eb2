"""Single-photon transport in a coupled-cavity waveguide controlled by a cavity-driven cascade emitter."""

__version__ = "0.1.0"

from .dressed import (
    ConditionReport,
    DressedBasis,
    condition_equivalence_check,
    dressed_basis,
    effective_potential_dressed,
    scattering_amplitudes_vtype,
)
from .errors import (
    BandEdgeError,
    BoundaryContamination,
    CavitySwitchError,
    DegenerateBandEdge,
    InvalidParameters,
    InvalidPoint,
    NoInBandSolution,
    PoleAtThisEnergy,
    RequiresControlPhotons,
    SingularSystem,
)
from .model import (
    ModelParams,
    RWAReport,
    ScatteringPoint,
    dispersion,
    invert_dispersion,
    make_point,
    reduce_momentum,
    rwa_validity,
)
from .oracle import (
    LatticeProblem,
    StationarySolution,
    WavepacketRun,
    WavepacketSpec,
    build_hamiltonian,
    run_wavepacket,
    solve_stationary,
)
from .scattering import (
    Branch,
    ScatteringResult,
    effective_potential,
    full_reflection_momenta,
    full_transmission_momenta,
    is_full_reflection,
    is_full_transmission,
    required_gb2n,
    scattering_amplitudes,
)
from .sweep import PRESETS, Axis, SweepSpec, SweepTable, preset, run_sweep
