"""Minimum-distance matching of two attribute databases."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from ..core.exceptions import ArgumentError
from ..core.structures import AttributeDatabase, PartialMatching, Permutation
from ..schemas.reports import MatchMode

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MatchResult:
    matching: Union[Permutation, PartialMatching]
    total_cost: float
    mode: MatchMode
    unmatched: int = 0
    k: Optional[int] = None

    @property
    def is_total(self) -> bool:
        return isinstance(self.matching, Permutation) or self.matching.is_total()

    def permutation(self) -> Permutation:
        if isinstance(self.matching, Permutation):
            return self.matching
        return self.matching.to_permutation()


def cost_matrix(X: AttributeDatabase, Y: AttributeDatabase) -> np.ndarray:
    """Z[i, j] = ||x_i - y_j||^2."""
    if X.d != Y.d:
        raise ArgumentError(f"dimension mismatch: {X.d} != {Y.d}")
    if X.d == 0:
        return np.zeros((X.n, Y.n))
    return cdist(X.rows, Y.rows, metric="sqeuclidean")


def solve_assignment(Z: np.ndarray) -> Tuple[Permutation, float]:
    Z = np.asarray(Z, dtype=np.float64)
    if Z.ndim != 2 or Z.shape[0] != Z.shape[1]:
        raise ArgumentError(f"cost matrix must be square, got shape {Z.shape}")
    if not np.all(np.isfinite(Z)):
        raise ArgumentError("cost matrix has non-finite entries")
    rows, cols = linear_sum_assignment(Z)
    mapping = np.empty(Z.shape[0], dtype=np.int64)
    mapping[rows] = cols
    return Permutation(mapping), float(Z[rows, cols].sum())


def min_distance_match(X: AttributeDatabase, Y: AttributeDatabase) -> MatchResult:
    if X.n != Y.n:
        raise ArgumentError(f"databases have {X.n} and {Y.n} rows")
    if X.d != Y.d:
        raise ArgumentError(f"dimension mismatch: {X.d} != {Y.d}")
    if X.d == 0:
        return MatchResult(matching=Permutation.identity(X.n), total_cost=0.0, mode=MatchMode.min_distance)
    pi, cost = solve_assignment(cost_matrix(X, Y))
    logger.debug("min-distance match n=%d cost=%.6g", X.n, cost)
    return MatchResult(matching=pi, total_cost=cost, mode=MatchMode.min_distance)
