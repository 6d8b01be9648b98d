"""Fitting errors"""


class FitError(ValueError):
    """Least-squares fit cannot be computed"""


class DegenerateAbscissaeError(FitError):
    """All abscissae are equal, so there is no scale to standardize with"""


class SingularSystemError(FitError):
    """Normal equations are rank deficient at the requested degree"""


class DomainError(FitError):
    """Log-log fit requested on nonpositive data"""


class InversionError(FitError):
    """Percent level has no preimage on the decreasing branch"""

    def __init__(self, message: str, p: float | None = None):
        self.p = p
        super().__init__(message)
