"""Exception hierarchy shared by every module.

All failures raised by this package derive from XieqError so callers can
distinguish library faults from programming errors.  Numerical failures carry
enough state (abscissa, partial value, error estimate) to diagnose a run
without re-executing it.
"""

from __future__ import annotations


class XieqError(Exception):
    """Base class for all package errors."""


class DomainError(XieqError):
    """Argument outside the mathematical domain of the operation."""


class PoleError(XieqError):
    """Evaluation requested exactly at a pole."""


class BoundaryError(XieqError):
    """(sigma, c) lies on a region boundary line where the operator jumps."""

    def __init__(self, message: str, sigma=None, c=None, line: str | None = None):
        super().__init__(message)
        self.sigma = sigma
        self.c = c
        self.line = line  # "blue", "red" or "green"


class NonConvergentError(XieqError):
    """Quadrature failed to reach the requested tolerance."""

    def __init__(self, message: str, value=None, abs_error_estimate=None):
        super().__init__(message)
        self.value = value
        self.abs_error_estimate = abs_error_estimate


class IntegrandFailureError(XieqError):
    """Integrand returned NaN/inf; carries the offending abscissa."""

    def __init__(self, abscissa):
        super().__init__(f"integrand failed at v = {abscissa}")
        self.abscissa = abscissa


class NoSignChangeError(XieqError):
    """Root bracket endpoints do not straddle a sign change."""


class MaxIterationsError(XieqError):
    """Iteration budget exhausted before meeting the tolerance."""


class NotRecoverableError(XieqError):
    """The requested quantity is not recoverable in this region (null identity only)."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class UnknownIdentityError(XieqError):
    """Identity id not present in the registry."""


class UnknownFigureError(XieqError):
    """Figure id not present in the figure registry."""


class SingularPointError(XieqError):
    """Linear solve for a window-width parameter hit a near-vanishing denominator."""


class NotAZeroError(XieqError):
    """Ordinate failed the sign-change verification for being a zeta zero."""


class ZeroArgumentError(XieqError):
    """Phase of an exact zero requested."""


class ConfigError(XieqError):
    """Invalid run configuration (CLI exit code 2)."""


class UnsupportedCoefficientError(XieqError):
    """Background coefficient requested outside the tabulated (j, k) range."""
