"""Exception types shared across the toolkit."""


class FreePlateError(Exception):
    """Base class for all toolkit errors."""


class DomainError(FreePlateError, ValueError):
    """An argument lies outside the supported domain of an operation."""


class ConvergenceError(FreePlateError, RuntimeError):
    """An iterative procedure hit its iteration/term budget."""


class BracketNotFoundError(FreePlateError, RuntimeError):
    """No sign change was found where one was required."""


class QuadratureError(FreePlateError, RuntimeError):
    """Adaptive quadrature exceeded its subdivision depth."""

    def __init__(self, message, worst_interval=None):
        super().__init__(message)
        self.worst_interval = worst_interval


class EvaluationError(FreePlateError, RuntimeError):
    """A user-supplied function failed or returned a non-finite value."""

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x


class BoundViolation(FreePlateError, AssertionError):
    """A computed quantity violated a proven inequality (fatal diagnostic)."""
