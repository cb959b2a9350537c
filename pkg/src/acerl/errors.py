from typing import Optional


class AcerlError(Exception):
    """Base class for every error raised by the package."""


class DimensionMismatchError(AcerlError, ValueError):
    """Array shapes that must agree do not."""


class SchemaError(AcerlError, ValueError):
    """A persisted document is corrupt or written by an incompatible schema version."""


class NumericalError(AcerlError, ArithmeticError):
    """Base class for numerical failures (CLI exit code 2)."""


class DivergenceError(NumericalError):
    """
    The contrastive loss or its gradient became non-finite during fitting.

    Usually means the step size is too large for the data scale.
    """

    def __init__(self, k: int, t: int, what: str = "gradient") -> None:
        self.k = k
        self.t = t
        self.what = what
        super().__init__(
            f"Non-finite {what} at outer iteration k={k}, inner step t={t}; "
            f"reduce the step size"
        )


class ConvergenceError(NumericalError):
    """An iterative routine failed to reach its tolerance."""

    def __init__(self, routine: str, iterations: int, detail: Optional[str] = None) -> None:
        self.routine = routine
        self.iterations = iterations
        message = f"{routine} did not converge after {iterations} iterations"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class DegenerateModelError(NumericalError):
    """The model cannot support the requested computation (zero embedding, isolated node, ...)."""
