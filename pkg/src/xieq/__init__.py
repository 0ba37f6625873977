"""High-precision toolkit for the integral-operator representation of the
completed Riemann xi/zeta functions: region-wise contour formulas, an
identity-verification catalog, moment tables, pole-window approximations, and
a critical-line zero predictor."""

from .integral_eq import IdentityReport, Region
from .numerics import Interval, PrecisionContext, QuadratureResult
from .zeta_core import PointS

__version__ = "0.1.0"

__all__ = [
    "IdentityReport",
    "Interval",
    "PointS",
    "PrecisionContext",
    "QuadratureResult",
    "Region",
    "__version__",
]
