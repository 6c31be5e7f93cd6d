"""Exception types raised by the optics and solver layers."""


class DomainError(ValueError):
    """Input outside the domain where a formula is defined."""


class SpectralSingularityError(ArithmeticError):
    """Scattering amplitudes diverge: the transfer matrix has ``m22 == 0``."""


class NearPTError(DomainError):
    """Real parts of the two indices are too close for the asymmetric seed formulas.

    Use :func:`cpalaser.solver.pt_special_case` instead.
    """


class ConvergenceError(RuntimeError):
    """Newton refinement did not reach the residual tolerance."""

    def __init__(self, message, x=None, residual=float("nan"), iterations=0):
        super().__init__(message)
        self.x = x
        self.residual = residual
        self.iterations = iterations


class SingularJacobianError(ConvergenceError):
    """Jacobian too ill-conditioned to take a Newton step."""
