"""Exception types shared across the package."""


class PdemWignerError(Exception):
    """Base class for all package errors."""


class DomainError(PdemWignerError):
    """Parameter outside the domain where a formula or branch is valid."""


class PoleError(DomainError):
    """Evaluation requested at a pole of a special function."""


class NonConvergence(PdemWignerError):
    """A quadrature failed to reach the requested tolerance within budget."""


class PrecisionInsufficient(PdemWignerError):
    """Working precision cannot absorb the estimated cancellation."""


class RealityViolation(PdemWignerError):
    """Imaginary residue of a nominally real quantity exceeded its bound."""


class TruncationError(PdemWignerError):
    """A grid or integration window is too narrow for the requested operation."""


class LatticeTooCoarse(PdemWignerError):
    """Finite-difference residual does not shrink like h^2 under refinement."""
