"""Exception and warning types shared across the package."""


class XxzPairError(Exception):
    """Base class for all package-specific errors."""


class DegenerateInput(XxzPairError):
    """Anisotropy J = j_x - j_z and field b0 both vanish.

    The shifted triplet spectrum collapses to a triple root at zero.  The
    conventional invariants (q = r = 0, p = pi/2) ride along on the
    exception so callers that can live with the triple root may recover.
    """

    def __init__(self, message, invariants=None):
        super().__init__(message)
        self.invariants = invariants


class DegenerateSpectrum(XxzPairError):
    """Two levels coincide within tolerance; per-level phases are undefined."""


class NotARoot(XxzPairError):
    """Energy handed to the coefficient formulas does not solve the cubic."""


class ConvergenceFailure(XxzPairError):
    """Jacobi sweep budget exhausted before reaching the off-diagonal target."""


class NormError(XxzPairError):
    """State vector is not normalized within tolerance."""


class AdiabaticityViolation(XxzPairError):
    """Evolution too fast to track the instantaneous eigenstate."""


class StepUnderflow(XxzPairError):
    """Too few integration steps for the requested period (dt * ||H|| too large)."""


class AdiabaticityWarning(UserWarning):
    """Drive frequency is not small against the minimum spectral gap."""
