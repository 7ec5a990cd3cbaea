"""
Exception classes shared by every orbispec service.

Each error carries a stable ``code`` so the command line can emit a
machine-parseable payload on stderr.
"""

from typing import Any


class OrbispecError(Exception):
    """Base exception for domain errors."""

    code = "orbispec_error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        """Payload written to stderr by the CLI error handler."""
        payload: dict[str, Any] = {"error": self.code, "message": self.message}
        if self.details:
            payload["details"] = self.details
        return payload


class InvalidInput(OrbispecError):
    """Raised when an input value violates a documented precondition."""

    code = "invalid_input"


class ParabolicInCocompact(OrbispecError):
    """Raised when a parabolic element shows up in a group asserted cocompact."""

    code = "parabolic_in_cocompact"


class NotHyperbolic(OrbispecError):
    """Raised when a signature admits no curvature -1 metric."""

    code = "not_hyperbolic"


class Inconsistent(OrbispecError):
    """Raised when area and cone orders fit no nonnegative integer genus."""

    code = "inconsistent"


class BudgetExceeded(OrbispecError):
    """Raised when word enumeration passes the configured element cap."""

    code = "budget_exceeded"


class MissingRoot(OrbispecError):
    """Raised when a class is a proper power of a class that was not enumerated."""

    code = "missing_root"


class QuadratureFailure(OrbispecError):
    """Raised when an adaptive quadrature cannot meet its tolerance."""

    code = "quadrature_failure"


class OutOfStrip(OrbispecError):
    """Raised when a spectral parameter lies outside the pair's analyticity strip."""

    code = "out_of_strip"


class GridTooCoarse(OrbispecError):
    """Raised when the time grid step exceeds a quarter of the mollifier width."""

    code = "grid_too_coarse"


class GridCoverage(OrbispecError):
    """Raised when a sampled function does not cover the range an operation needs."""

    code = "grid_coverage"


class AmbiguousFit(OrbispecError):
    """Raised when two cone multisets explain the data almost equally well."""

    code = "ambiguous_fit"


class NonIntegerFit(OrbispecError):
    """Raised when no integer combination of psi functions fits the data."""

    code = "non_integer_fit"


class NonIntegerMultiplicity(OrbispecError):
    """Raised when a peak amplitude is not close to an integer multiple."""

    code = "non_integer_multiplicity"


class OverlapUnresolved(OrbispecError):
    """Raised when two singularities sit closer than the mollifier resolves."""

    code = "overlap_unresolved"
