"""Threshold classifiers for exact matching and exact community recovery.

Achievability inequalities are inclusive, impossibility conditions strict, and
everything in between is a gap. Asymptotic side conditions are replaced by
finite-n proxies and reported as flags:

* ``high_dim``: d >= (log n)^1.5 stands in for d = omega(log n)
* ``low_dim``: d < (log n)^1.5, the complement of ``high_dim``, stands in for
  d = O(log n) and gates the low-dimension impossibility condition
* ``mu_strong``: R >= (2 + eps) log n stands in for R >= 2 log n + omega(1)
* ``sparse``: p <= exp(-(log log n)^3)
* ``sparse_intersection``: p s^2 <= 1 / log n stands in for p s^2 = o(1)
* ``strong_correlation``: 1/rho^2 - 1 <= d / 40
"""

from __future__ import annotations

import math
from typing import Dict, Optional, Tuple

from ..core.exceptions import ArgumentError
from ..core.settings import settings
from ..schemas.params import CcsbmParams, CgmmParams, ModelParams
from ..schemas.reports import MatchingLabel, RecoveryLabel, RegionLabel
from .functions import fn_I_star, snr_c, snr_cprime


def _eps(eps: Optional[float]) -> float:
    eps = settings.default_eps if eps is None else eps
    if not 0.0 < eps < 1.0:
        raise ArgumentError(f"eps must lie in (0, 1), got {eps}")
    return eps


def _log_n(n: int) -> float:
    if n < 2:
        raise ArgumentError(f"thresholds need n >= 2, got {n}")
    return math.log(n)


def attribute_information(d: int, rho: float) -> float:
    """(d/4) log(1/(1-rho^2)), infinite at rho = 1 and zero without attributes."""
    if d == 0 or rho == 0.0:
        return 0.0
    if rho >= 1.0:
        return math.inf
    return d / 4.0 * -math.log1p(-rho * rho)


def edge_information(n: int, p: float, q: float, s: float) -> float:
    """Mean degree n s^2 (p+q)/2 of the true intersection graph."""
    return n * s * s * (p + q) / 2.0


def _low_dim(d: int, log_n: float) -> bool:
    return d < log_n**1.5


def _strong_correlation(d: int, rho: float) -> bool:
    return d >= 1 and rho > 0.0 and 1.0 / (rho * rho) - 1.0 <= d / 40.0


def condition_flags(params: ModelParams, eps: Optional[float] = None) -> Dict[str, bool]:
    eps = _eps(eps)
    log_n = _log_n(params.n)
    flags = {
        "high_dim": not _low_dim(params.d, log_n),
        "low_dim": _low_dim(params.d, log_n),
        "mu_strong": params.mean_power >= (2.0 + eps) * log_n,
        "strong_correlation": _strong_correlation(params.d, params.rho),
    }
    if isinstance(params, CcsbmParams):
        flags["sparse"] = params.p <= math.exp(-math.log(log_n) ** 3) if params.n > 2 else False
        flags["sparse_intersection"] = params.p * params.s**2 <= 1.0 / log_n
        flags["edge_dominant"] = edge_information(
            params.n, params.p, params.q, params.s
        ) >= (1.0 + eps) * log_n
    return flags


def _classify_matching(
    n: int, d: int, rho: float, mean_power: float, edge: float, eps: float, C: float
) -> MatchingLabel:
    log_n = _log_n(n)
    info = attribute_information(d, rho)
    total = edge + info
    attributes_usable = mean_power >= (2.0 + eps) * log_n or not _low_dim(d, log_n)
    if info == math.inf:
        return MatchingLabel.achievable
    if total >= (1.0 + eps) * log_n and (edge >= (1.0 + eps) * log_n or attributes_usable):
        return MatchingLabel.achievable
    if total == 0.0:
        return MatchingLabel.impossible
    if total < (1.0 - eps) * log_n and _low_dim(d, log_n):
        return MatchingLabel.impossible
    if _strong_correlation(d, rho) and total < log_n - math.log(d) + C:
        return MatchingLabel.impossible
    return MatchingLabel.gap


def classify_matching_cgmm(
    params: CgmmParams, eps: Optional[float] = None, C: Optional[float] = None
) -> MatchingLabel:
    C = settings.theorem_constant if C is None else C
    return _classify_matching(
        params.n, params.d, params.rho, params.mean_power, 0.0, _eps(eps), C
    )


def classify_matching_sbm(n: int, p: float, q: float, s: float, eps: Optional[float] = None) -> MatchingLabel:
    """Correlated SBM without attributes: n s^2 (p+q)/2 against log n."""
    eps = _eps(eps)
    log_n = _log_n(n)
    edge = edge_information(n, p, q, s)
    if edge >= (1.0 + eps) * log_n:
        return MatchingLabel.achievable
    if edge < (1.0 - eps) * log_n:
        return MatchingLabel.impossible
    return MatchingLabel.gap


def classify_matching_ccsbm(
    params: CcsbmParams, eps: Optional[float] = None, C: Optional[float] = None
) -> MatchingLabel:
    C = settings.theorem_constant if C is None else C
    edge = edge_information(params.n, params.p, params.q, params.s)
    return _classify_matching(
        params.n, params.d, params.rho, params.R, edge, _eps(eps), C
    )


def classify_matching(params: ModelParams, eps: Optional[float] = None, C: Optional[float] = None) -> MatchingLabel:
    if isinstance(params, CgmmParams):
        return classify_matching_cgmm(params, eps, C)
    return classify_matching_ccsbm(params, eps, C)


def gmm_recovery_threshold(n: int, d: int) -> float:
    """(1 + sqrt(1 + 2d/(n log n))) log n, the single-database threshold on ||mu||^2."""
    log_n = _log_n(n)
    return (1.0 + math.sqrt(1.0 + 2.0 * d / (n * log_n))) * log_n


def recovery_values(params: CcsbmParams) -> Tuple[float, float]:
    """(single, pair) left-hand sides compared against 1 for the CCSBM."""
    scale = params.n / _log_n(params.n)
    a, b = params.p * scale, params.q * scale
    if params.d == 0:
        c = c_prime = 0.0
    else:
        c = snr_c(params.R, params.d, params.n)
        c_prime = snr_cprime(params.R, params.d, params.n, params.rho)
    single = fn_I_star(params.s * a, params.s * b, c)
    union = 1.0 - (1.0 - params.s) ** 2
    pair = fn_I_star(union * a, union * b, c_prime)
    return single, pair


def _label(value: float, threshold: float, eps: float) -> RecoveryLabel:
    if value >= (1.0 + eps) * threshold:
        return RecoveryLabel.possible
    if value < (1.0 - eps) * threshold:
        return RecoveryLabel.impossible
    return RecoveryLabel.gap


def classify_recovery(
    params: ModelParams,
    pair: bool,
    eps: Optional[float] = None,
    C: Optional[float] = None,
) -> RecoveryLabel:
    """Exact recovery label from one copy (``pair=False``) or the matched pair.

    Pair recovery counts as possible only where exact matching is achievable.
    """
    eps = _eps(eps)
    if isinstance(params, CgmmParams):
        threshold = gmm_recovery_threshold(params.n, params.d)
        if pair:
            threshold *= (1.0 + params.rho) / 2.0
        label = _label(params.mean_power, threshold, eps)
    else:
        single, paired = recovery_values(params)
        label = _label(paired if pair else single, 1.0, eps)
    if pair and label == RecoveryLabel.possible:
        if classify_matching(params, eps, C) != MatchingLabel.achievable:
            return RecoveryLabel.gap
    return label


def classify_region(
    params: ModelParams, eps: Optional[float] = None, C: Optional[float] = None
) -> RegionLabel:
    return RegionLabel(
        matching=classify_matching(params, eps, C),
        recovery_single=classify_recovery(params, pair=False, eps=eps, C=C),
        recovery_pair=classify_recovery(params, pair=True, eps=eps, C=C),
        flags=condition_flags(params, eps),
    )
