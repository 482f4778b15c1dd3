"""Exception types shared across the package.

The CLI maps these onto exit codes: validation problems exit with 1,
numerical failures with 2.
"""


class DomainError(ValueError):
    """An argument is outside the domain a routine is defined on."""


class NumericError(RuntimeError):
    """A numerical routine failed to converge or lost its bracket."""

    def __init__(self, message, bracket=None):
        if bracket is not None:
            lo, hi = bracket
            message = f"{message} (bracket [{lo!r}, {hi!r}])"
        super().__init__(message)
        self.bracket = bracket


class RegimeError(DomainError):
    """A tail index left the parameter regime an estimator needs.

    Callers decide whether to abort or to skip the offending replication.
    """


class DegenerateTailError(NumericError):
    """No observations above the reference point; exceedance sums vanish."""
