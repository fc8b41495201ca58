"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(ArithmeticError):
    """Evaluation requested at (or too close to) a pole of a rational function."""


class ConvergenceError(RuntimeError):
    """A series did not reach the requested tolerance within the term cap.

    Carries the best available partial result in ``result`` so callers can
    triage instead of losing the work.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
