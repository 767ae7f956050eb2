"""Exception types raised by the scattering engine and its oracles."""


class CavitySwitchError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameters(CavitySwitchError, ValueError):
    """Model parameters violate a physical invariant."""


class InvalidPoint(CavitySwitchError, ValueError):
    """A scattering point is inconsistent with the parameters it is used with."""


class PoleAtThisEnergy(CavitySwitchError, ArithmeticError):
    """The effective potential diverges (a dressed level is resonant with the photon)."""


class DegenerateBandEdge(CavitySwitchError, ArithmeticError):
    """sin k = 0 and the remaining denominator term vanishes too; scattering is undefined."""


class NoInBandSolution(CavitySwitchError, ValueError):
    """The requested photon energy lies outside the cosine band."""


class RequiresControlPhotons(CavitySwitchError, ValueError):
    """The dressed doublet does not exist for this parameter set (n = 0 or no splitting)."""


class SingularSystem(CavitySwitchError, ArithmeticError):
    """The stationary lattice system is singular for these parameters."""


class BandEdgeError(CavitySwitchError, ValueError):
    """The momentum sits at a band edge, where the group velocity vanishes."""


class BoundaryContamination(CavitySwitchError, RuntimeError):
    """The wavepacket reached the ends of the finite chain before measurement."""
