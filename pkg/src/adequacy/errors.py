"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Invalid input data or parameters (bad units, malformed files, bad ranges)."""


class DataFormatError(ValidationError):
    """Malformed input file; message carries file and row context."""


class CalibrationInfeasibleError(RuntimeError):
    """A target risk level cannot be bracketed within the configured shift bounds."""


class BoundarySolutionError(RuntimeError):
    """The procurement optimum lies on a bracket boundary, not in the interior.

    ``bound`` names the binding end ("lower" or "upper").
    """

    def __init__(self, message: str, bound: str):
        super().__init__(message)
        self.bound = bound


class EmptyDistributionError(ValueError):
    """An empirical distribution was requested but no samples exist."""
