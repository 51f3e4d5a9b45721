import math
from typing import Optional

from scipy.integrate import quad

from ..core.exceptions import ArgumentError
from ..core.settings import settings


def integrand_I(x: float, alpha: float) -> float:
    return math.log1p((1.0 - math.cos(2.0 * math.pi * x)) / (2.0 * alpha))


def numeric_integral_I(alpha: float, tol: Optional[float] = None) -> float:
    """Adaptive quadrature of the integrand over [0, 1]; the reference for fn_I."""
    if not alpha > 0:
        raise ArgumentError(f"alpha must be positive, got {alpha}")
    tol = settings.quad_tol if tol is None else tol
    value, _ = quad(integrand_I, 0.0, 1.0, args=(alpha,), epsabs=tol, epsrel=tol, limit=200)
    return float(value)
