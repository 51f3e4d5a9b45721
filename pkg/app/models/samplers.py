"""Samplers for correlated Gaussian mixtures and correlated contextual SBMs."""

from __future__ import annotations

import logging
import math
from typing import Optional, Tuple

import numpy as np

from ..core.exceptions import ArgumentError
from ..core.operations import apply_permutation
from ..core.structures import (
    AttributeDatabase,
    CorrelatedInstance,
    LabelVector,
    Permutation,
    SimpleGraph,
)
from ..schemas.params import CcsbmParams, CgmmParams, ModelParams
from .random import SeedLike, make_rng, spawn

logger = logging.getLogger(__name__)


def sample_labels(n: int, rng: np.random.Generator) -> LabelVector:
    if n < 1:
        raise ArgumentError(f"n must be positive, got {n}")
    return LabelVector(2 * rng.integers(0, 2, size=n, dtype=np.int8) - 1)


def sample_mu(d: int, R: float, rng: np.random.Generator) -> np.ndarray:
    """Uniform point on the sphere of squared radius ``R`` in dimension ``d``."""
    if d < 1:
        raise ArgumentError(f"d must be at least 1, got {d}")
    if not R > 0:
        raise ArgumentError(f"R must be positive, got {R}")
    direction = rng.standard_normal(d)
    norm = np.linalg.norm(direction)
    while norm == 0.0:
        direction = rng.standard_normal(d)
        norm = np.linalg.norm(direction)
    return direction * (math.sqrt(R) / norm)


def correlated_attributes(
    labels: LabelVector, mu: np.ndarray, rho: float, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray]:
    """Return (X, Y') with x_i = mu s_i + z_i and y'_i = mu s_i + rho z_i + sqrt(1-rho^2) w_i."""
    n, d = labels.n, mu.size
    signal = np.outer(labels.labels.astype(np.float64), mu)
    z = rng.standard_normal((n, d))
    w = rng.standard_normal((n, d))
    x = signal + z
    y = signal + (rho * z + math.sqrt(max(0.0, 1.0 - rho * rho)) * w)
    return x, y


def _decode_triangular(t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Map pair indices 0..m(m-1)/2-1 to (i, j) with i < j, ordered by j then i."""
    j = np.floor((1.0 + np.sqrt(1.0 + 8.0 * t)) / 2.0).astype(np.int64)
    j[j * (j - 1) // 2 > t] -= 1
    j[(j + 1) * j // 2 <= t] += 1
    i = t - j * (j - 1) // 2
    return i, j


def _block_edges(
    rng: np.random.Generator,
    left: np.ndarray,
    right: Optional[np.ndarray],
    prob: float,
) -> Tuple[np.ndarray, np.ndarray]:
    if right is None:
        total = left.size * (left.size - 1) // 2
    else:
        total = left.size * right.size
    if total == 0 or prob <= 0.0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    count = int(rng.binomial(total, min(prob, 1.0)))
    positions = rng.choice(total, size=count, replace=False, shuffle=False)
    positions = np.sort(positions.astype(np.int64))
    if right is None:
        i, j = _decode_triangular(positions)
        return left[i], left[j]
    i, j = np.divmod(positions, right.size)
    return left[i], right[j]


def sample_sbm_edges(
    labels: LabelVector, p: float, q: float, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray]:
    """Edges of a two-block SBM as endpoint arrays.

    Each block draws its exact binomial edge count, then that many distinct
    pair positions, so the cost is linear in the number of edges.
    """
    plus = np.flatnonzero(labels.labels == 1)
    minus = np.flatnonzero(labels.labels == -1)
    blocks = [
        _block_edges(rng, plus, None, p),
        _block_edges(rng, minus, None, p),
        _block_edges(rng, plus, minus, q),
    ]
    rows = np.concatenate([block[0] for block in blocks])
    cols = np.concatenate([block[1] for block in blocks])
    return rows, cols


def sample_cgmm(params: CgmmParams, rng: np.random.Generator) -> CorrelatedInstance:
    labels_rng, mu_rng, noise_rng, perm_rng = spawn(rng, 4)
    labels = sample_labels(params.n, labels_rng)
    if params.mu is not None:
        mu = np.asarray(params.mu, dtype=np.float64)
    else:
        mu = sample_mu(params.d, params.R, mu_rng)
    x, y = correlated_attributes(labels, mu, params.rho, noise_rng)
    truth = Permutation.random(params.n, perm_rng)
    logger.debug("sampled cgmm n=%d d=%d rho=%.4f", params.n, params.d, params.rho)
    return CorrelatedInstance(
        db1=AttributeDatabase(x),
        db2=apply_permutation(AttributeDatabase(y), truth),
        truth_perm=truth,
        labels1=labels,
        mu=mu,
        params=params,
    )


def sample_ccsbm(params: CcsbmParams, rng: np.random.Generator) -> CorrelatedInstance:
    labels_rng, mu_rng, noise_rng, perm_rng, graph_rng, keep_rng = spawn(rng, 6)
    n = params.n
    labels = sample_labels(n, labels_rng)
    if params.d > 0:
        mu = sample_mu(params.d, params.R, mu_rng)
        x, y = correlated_attributes(labels, mu, params.rho, noise_rng)
        db1, db2_prime = AttributeDatabase(x), AttributeDatabase(y)
    else:
        mu = np.zeros(0)
        db1 = db2_prime = AttributeDatabase.empty(n)
    truth = Permutation.random(n, perm_rng)

    rows, cols = sample_sbm_edges(labels, params.p, params.q, graph_rng)
    keep1 = keep_rng.random(rows.size) < params.s
    keep2 = keep_rng.random(rows.size) < params.s
    graph1 = SimpleGraph.from_arrays(n, rows[keep1], cols[keep1])
    # G2' relabelled by the truth permutation
    graph2 = SimpleGraph.from_arrays(
        n, truth.mapping[rows[keep2]], truth.mapping[cols[keep2]]
    )
    logger.debug(
        "sampled ccsbm n=%d parent_edges=%d |E1|=%d |E2|=%d",
        n,
        rows.size,
        graph1.num_edges,
        graph2.num_edges,
    )
    return CorrelatedInstance(
        db1=db1,
        db2=apply_permutation(db2_prime, truth),
        truth_perm=truth,
        labels1=labels,
        mu=mu,
        params=params,
        graph1=graph1,
        graph2=graph2,
    )


def sample_instance(params: ModelParams, seed: SeedLike) -> CorrelatedInstance:
    """Sample the model named by ``params.model`` from a seed or generator."""
    rng = make_rng(seed)
    if isinstance(params, CgmmParams):
        return sample_cgmm(params, rng)
    if isinstance(params, CcsbmParams):
        return sample_ccsbm(params, rng)
    raise ArgumentError(f"unknown model parameters {type(params).__name__}")
