"""Exceptions shared across the package."""

from __future__ import annotations


class ConsistencyError(Exception):
    """Two routes that must agree exactly produced different values.

    Raised when an internal cross-check fails, e.g. a closed form whose
    radical part should cancel does not, or an exact division leaves a
    remainder.  This always indicates a bug, never a tolerance issue.
    """


class PrecisionError(Exception):
    """A certified numeric computation could not reach its target even at
    the maximum allowed working precision."""


class PrecisionEscalation(Exception):
    """Internal signal: the current working precision is insufficient.

    Callers catch this and retry at higher precision.  It never escapes
    the public API; if the precision ceiling is hit, it is converted to
    :class:`PrecisionError`.
    """


class DegenerateIntegrandError(Exception):
    """The integrand violates the distinct-pole assumptions (shared
    roots between the factors, or a repeated root in the inside
    factor); the denominator bound is meaningless in that case."""


class StepBudgetExceeded(Exception):
    """A simulation hit its step budget before reaching the requested
    residual mass.  Carries the partial report in ``report``."""

    def __init__(self, message: str, report: object) -> None:
        super().__init__(message)
        self.report = report
