"""Exception hierarchy shared by all numerical modules."""


class PlanarVacuumError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PlanarVacuumError, ValueError):
    """An argument lies outside the domain of the requested quantity."""


class PoleError(DomainError):
    """Evaluation at a pole (Gamma-type singularity)."""


class SpecialFunctionOverflow(PlanarVacuumError, ArithmeticError):
    """Result magnitude would exceed the double-precision range."""


class ConvergenceError(PlanarVacuumError, RuntimeError):
    """A series, quadrature or iteration did not reach its tolerance."""


class NoRootError(ConvergenceError):
    """A root bracket contains no sign change."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SupercriticalExcursionError(ConvergenceError):
    """A self-consistent iterate left the subcritical range."""
