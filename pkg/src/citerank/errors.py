"""Exception types shared across the package."""


class CiteRankError(Exception):
    """Base class for all toolkit errors."""


class CorpusError(CiteRankError):
    """Invalid corpus data: bad file row, unknown journal id, bad count.

    ``line`` is the 1-based physical line of the offending row when the
    error came from file parsing, else None.
    """

    def __init__(self, message: str, line: "int | None" = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MetricError(CiteRankError):
    """A metric operation was asked for an impossible computation."""


class MatrixBuildError(CiteRankError):
    """The cross-citation matrix or article-share vector cannot be formed."""


class ConvergenceError(CiteRankError):
    """Power iteration did not reach the residual tolerance."""

    def __init__(self, iterations: int, residual: float, tolerance: float):
        self.iterations = iterations
        self.residual = residual
        self.tolerance = tolerance
        super().__init__(
            f"no convergence after {iterations} iterations: "
            f"L1 residual {residual:.3e} > tolerance {tolerance:.3e}"
        )


class ComparisonError(CiteRankError):
    """A comparison statistic's precondition failed (too few pairs, zero variance, ...)."""
