"""Exhaustive reference solvers for small instances.

Each solver enumerates its whole search space, so each one checks an
:class:`OracleBudget` before starting and refuses anything larger.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..core.exceptions import ArgumentError, CapacityError
from ..core.settings import settings
from ..core.structures import AttributeDatabase, LabelVector, PartialMatching, Permutation, SimpleGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleBudget:
    max_n: int = field(default_factory=lambda: settings.oracle_max_n)
    max_states: int = field(default_factory=lambda: settings.oracle_max_states)

    def check(self, n: int, states: int) -> None:
        if n > self.max_n:
            raise CapacityError(f"n={n} exceeds the oracle limit of {self.max_n}")
        if states > self.max_states:
            raise CapacityError(f"{states} states exceed the oracle limit of {self.max_states}")


def naive_costs(X: AttributeDatabase, Y: AttributeDatabase) -> np.ndarray:
    if X.d != Y.d or X.n != Y.n:
        raise ArgumentError("databases must have the same shape")
    n = X.n
    Z = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            Z[i, j] = sum((a - b) ** 2 for a, b in zip(X.rows[i], Y.rows[j]))
    return Z


def brute_force_min_distance(
    X: AttributeDatabase, Y: AttributeDatabase, budget: Optional[OracleBudget] = None
) -> Tuple[Permutation, float]:
    budget = budget or OracleBudget()
    budget.check(X.n, math.factorial(X.n))
    Z = naive_costs(X, Y)
    rows = np.arange(X.n)
    best, best_cost = None, math.inf
    for candidate in itertools.permutations(range(X.n)):
        cost = float(Z[rows, list(candidate)].sum())
        if cost < best_cost:
            best, best_cost = candidate, cost
    return Permutation(best), best_cost


def map_objective(
    X: AttributeDatabase,
    Y: AttributeDatabase,
    labels1: LabelVector,
    labels2: LabelVector,
    mu: np.ndarray,
    rho: float,
    pi: Permutation,
) -> float:
    """sum ||x_i - y_pi(i)||^2 - f(s, s_pi) / rho."""
    x, y = X.rows, Y.rows[pi.mapping]
    s1 = labels1.labels.astype(np.float64)
    s2 = labels2.labels[pi.mapping].astype(np.float64)
    distance = float(np.sum((x - y) ** 2))
    f = float(
        np.sum(
            2.0 * (x @ mu) * s1
            + 2.0 * (y @ mu) * s2
            - 2.0 * rho * (x @ mu) * s2
            - 2.0 * rho * (y @ mu) * s1
            + 2.0 * rho * (mu @ mu) * s1 * s2
        )
    )
    return distance - f / rho


def brute_force_map_known_labels(
    X: AttributeDatabase,
    Y: AttributeDatabase,
    labels1: LabelVector,
    labels2: LabelVector,
    mu: np.ndarray,
    rho: float,
    budget: Optional[OracleBudget] = None,
) -> Permutation:
    """Posterior mode of the permutation given both label vectors.

    The posterior is supported on permutations with labels2[pi(i)] = labels1[i],
    so the objective is minimized over those only.
    """
    if not 0.0 < rho <= 1.0:
        raise ArgumentError(f"rho must lie in (0, 1], got {rho}")
    n = X.n
    if not (Y.n == labels1.n == labels2.n == n):
        raise ArgumentError("inputs disagree on n")
    mu = np.asarray(mu, dtype=np.float64)
    groups: List[Tuple[np.ndarray, np.ndarray]] = []
    for label in (1, -1):
        left = np.flatnonzero(labels1.labels == label)
        right = np.flatnonzero(labels2.labels == label)
        if left.size != right.size:
            raise ArgumentError("label counts differ between the copies")
        groups.append((left, right))
    budget = budget or OracleBudget()
    budget.check(n, math.prod(math.factorial(left.size) for left, _ in groups))

    (plus1, plus2), (minus1, minus2) = groups
    best, best_value = None, math.inf
    for plus in itertools.permutations(plus2.tolist()):
        for minus in itertools.permutations(minus2.tolist()):
            mapping = np.empty(n, dtype=np.int64)
            mapping[plus1] = plus
            mapping[minus1] = minus
            pi = Permutation(mapping)
            value = map_objective(X, Y, labels1, labels2, mu, rho, pi)
            if value < best_value:
                best, best_value = pi, value
    return best


def _valid_kcore(A: np.ndarray, B: np.ndarray, domain, image, k: int) -> bool:
    if not domain:
        return True
    sub = A[np.ix_(domain, domain)] & B[np.ix_(image, image)]
    return int(sub.sum(axis=1).min()) >= k


def brute_force_kcore_estimator(
    G1: SimpleGraph, G2: SimpleGraph, k: int, budget: Optional[OracleBudget] = None
) -> PartialMatching:
    """Largest k-core matching by plain enumeration, lexicographically smallest on ties."""
    if G1.n != G2.n:
        raise ArgumentError(f"graph sizes differ: {G1.n} != {G2.n}")
    n = G1.n
    states = sum(math.comb(n, m) * math.perm(n, m) for m in range(n + 1))
    budget = budget or OracleBudget()
    budget.check(n, states)
    A = G1.adjacency.toarray().astype(bool)
    B = G2.adjacency.toarray().astype(bool)
    for size in range(n, 0, -1):
        valid = [
            tuple(zip(domain, image))
            for domain in itertools.combinations(range(n), size)
            for image in itertools.permutations(range(n), size)
            if _valid_kcore(A, B, list(domain), list(image), k)
        ]
        if valid:
            domain, image = zip(*min(valid))
            return PartialMatching(domain, image, n)
    return PartialMatching.empty(n)
