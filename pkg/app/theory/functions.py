"""Closed-form rate functions used by the threshold classifiers."""

import math

import numpy as np

from ..core.exceptions import ArgumentError
from ..schemas.params import CcsbmParams, RateParams


def fn_S(alpha: float, t: int) -> float:
    """sum_{j=1}^{t-1} log(1 + (1 - cos(2 pi j / t)) / (2 alpha))."""
    if not alpha > 0:
        raise ArgumentError(f"alpha must be positive, got {alpha}")
    if t < 2 or int(t) != t:
        raise ArgumentError(f"t must be an integer >= 2, got {t}")
    j = np.arange(1, int(t))
    return float(np.sum(np.log1p((1.0 - np.cos(2.0 * np.pi * j / t)) / (2.0 * alpha))))


def fn_I(alpha: float) -> float:
    """2 log((1 + sqrt(1 + 1/alpha)) / 2)."""
    if not alpha > 0:
        raise ArgumentError(f"alpha must be positive, got {alpha}")
    return 2.0 * math.log((1.0 + math.sqrt(1.0 + 1.0 / alpha)) / 2.0)


def fn_I_t(t: float, a: float, b: float, c: float) -> float:
    if not (a > 0 and b > 0):
        raise ArgumentError(f"a and b must be positive, got a={a}, b={b}")
    return (
        a / 2.0 * (1.0 - (a / b) ** t)
        + b / 2.0 * (1.0 - (b / a) ** t)
        - 2.0 * c * (t + t * t)
    )


def fn_I_star(a: float, b: float, c: float) -> float:
    """((sqrt a - sqrt b)^2 + c) / 2, the supremum of fn_I_t over t."""
    if a < 0 or b < 0:
        raise ArgumentError(f"a and b must be non-negative, got a={a}, b={b}")
    return ((math.sqrt(a) - math.sqrt(b)) ** 2 + c) / 2.0


def _log_n(n: int) -> float:
    if n < 2:
        raise ArgumentError(f"n must be at least 2, got {n}")
    return math.log(n)


def snr_c(R: float, d: int, n: int) -> float:
    """c with R^2 / (R + d/n) = c log n."""
    if R < 0 or d < 0:
        raise ArgumentError("R and d must be non-negative")
    if R == 0:
        return 0.0
    return R * R / (R + d / n) / _log_n(n)


def snr_cprime(R: float, d: int, n: int, rho: float) -> float:
    """c' for the averaged pair, whose mean power is 2R/(1+rho)."""
    if not 0.0 <= rho <= 1.0:
        raise ArgumentError(f"rho must lie in [0, 1], got {rho}")
    return snr_c(2.0 * R / (1.0 + rho), d, n)


def rate_params(params: CcsbmParams) -> RateParams:
    """a, b, c, c' with p = a log n / n and q = b log n / n."""
    scale = params.n / _log_n(params.n)
    return RateParams(
        a=params.p * scale,
        b=params.q * scale,
        c=snr_c(params.R, params.d, params.n),
        c_prime=snr_cprime(params.R, params.d, params.n, params.rho),
    )
