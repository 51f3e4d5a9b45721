"""Community recovery from a graph plus whitened node attributes."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.sparse.linalg import LinearOperator

from ..core.exceptions import ArgumentError, DegenerateInputError
from ..core.operations import label_overlap_up_to_sign
from ..core.settings import settings
from ..core.structures import AttributeDatabase, LabelVector, SimpleGraph
from ..models.random import SeedLike
from .spectral import hollow_gram_operator, power_iteration, shifted, signs
from .types import RecoveryReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GenieParams:
    """Edge rates a', b' and the norm r' of the whitened mean."""

    a_prime: float
    b_prime: float
    r_prime: float
    d: int
    n: int

    def __post_init__(self):
        if not self.b_prime > 0:
            raise ArgumentError(f"b' must be positive, got {self.b_prime}")
        if not self.a_prime > self.b_prime:
            raise ArgumentError(f"a'={self.a_prime} must exceed b'={self.b_prime}")
        if self.d > 0 and not self.r_prime > 0:
            raise ArgumentError(f"r' must be positive when d > 0, got {self.r_prime}")

    @property
    def edge_weight(self) -> float:
        return math.log(self.a_prime / self.b_prime)

    @property
    def attribute_weight(self) -> float:
        if self.d == 0:
            return 0.0
        return 2.0 / (self.n + self.d / self.r_prime**2)


def _check_inputs(adj: SimpleGraph, db: AttributeDatabase, n: Optional[int] = None):
    if adj.n != db.n:
        raise ArgumentError(f"graph has {adj.n} nodes, database {db.n} rows")
    if n is not None and n != adj.n:
        raise ArgumentError(f"n={n} does not match {adj.n} nodes")


def _field(adj: SimpleGraph, db: AttributeDatabase, labels: np.ndarray, params: GenieParams) -> np.ndarray:
    """log(a'/b') (A s) + 2/(n + d/r'^2) (H(U U^T) s)."""
    s = labels.astype(np.float64)
    field = params.edge_weight * (adj.adjacency @ s)
    if db.d and params.attribute_weight:
        operator, _ = hollow_gram_operator(db.rows, params.attribute_weight)
        field = field + operator.matvec(s)
    return field


def genie_score(
    adj: SimpleGraph,
    db: AttributeDatabase,
    labels: LabelVector,
    a_prime: float,
    b_prime: float,
    r_prime: float,
    d: int,
    n: int,
) -> np.ndarray:
    params = GenieParams(a_prime, b_prime, r_prime, d, n)
    _check_inputs(adj, db, n)
    if labels.n != adj.n:
        raise ArgumentError(f"{labels.n} labels for {adj.n} nodes")
    return labels.labels * _field(adj, db, labels.labels, params)


def estimate_genie_params(
    adj: SimpleGraph, db: AttributeDatabase, labels: LabelVector
) -> GenieParams:
    """Plug-in a', b', r' from observed edge counts and the label-signed attribute mean."""
    _check_inputs(adj, db)
    n = adj.n
    sizes = np.array([np.count_nonzero(labels.labels == 1), np.count_nonzero(labels.labels == -1)])
    pairs_in = float(sum(m * (m - 1) // 2 for m in sizes))
    pairs_out = float(sizes[0] * sizes[1])
    edges = adj.edges()
    same = labels.labels[edges[:, 0]] == labels.labels[edges[:, 1]]
    edges_in, edges_out = float(np.count_nonzero(same)), float(np.count_nonzero(~same))
    scale = n / math.log(n) if n > 1 else 1.0
    q_hat = max(edges_out, 0.5) / max(pairs_out, 1.0)
    p_hat = max(edges_in / max(pairs_in, 1.0), 2.0 * q_hat)
    r_prime = 1.0
    if db.d:
        mu_hat = (labels.labels.astype(np.float64) @ db.rows) / n
        # E||mu_hat||^2 = r'^2 + d / n under unit noise
        r_prime = math.sqrt(max(float(mu_hat @ mu_hat) - db.d / n, 1.0 / n))
    return GenieParams(p_hat * scale, q_hat * scale, r_prime, db.d, n)


def _provisional_params(adj: SimpleGraph, db: AttributeDatabase) -> GenieParams:
    # E||u_i||^2 = r'^2 + d for whitened rows
    r_squared = 1.0
    if db.d:
        r_squared = max(float(np.mean(np.einsum("ij,ij->i", db.rows, db.rows))) - db.d, 1.0)
    return GenieParams(2.0, 1.0, math.sqrt(r_squared), db.d, adj.n)


def spectral_csbm_init(
    adj: SimpleGraph,
    db: AttributeDatabase,
    params: GenieParams,
    seed: Optional[SeedLike] = None,
) -> LabelVector:
    """Top eigenvector of the density-centred adjacency plus the hollowed attribute Gram."""
    _check_inputs(adj, db)
    n = adj.n
    if n < 2:
        raise ArgumentError(f"spectral initialization needs n >= 2, got {n}")
    has_attributes = db.d > 0 and np.any(db.rows) and not np.all(db.rows == db.rows[0])
    if adj.num_edges == 0 and not has_attributes:
        raise DegenerateInputError("no edges and no informative attributes")

    density = 2.0 * adj.num_edges / (n * (n - 1))
    weight = params.edge_weight
    matrix = adj.adjacency.astype(np.float64)
    shift = weight * (float(adj.degrees().max(initial=0)) + density * n)
    if has_attributes:
        gram, gram_shift = hollow_gram_operator(db.rows, params.attribute_weight)
        shift += gram_shift
    else:
        gram = None

    def matvec(v):
        v = np.ravel(v)
        out = weight * (matrix @ v - density * (v.sum() - v))
        if gram is not None:
            out = out + gram.matvec(v)
        return out

    operator = LinearOperator((n, n), matvec=matvec, dtype=np.float64)
    vector, iterations = power_iteration(shifted(operator, shift), seed=seed)
    logger.debug("csbm spectral init n=%d iterations=%d", n, iterations)
    return LabelVector(signs(vector))


def genie_refine(
    adj: SimpleGraph,
    db: AttributeDatabase,
    labels0: LabelVector,
    params: GenieParams,
    max_sweeps: Optional[int] = None,
) -> Tuple[LabelVector, int]:
    """Synchronous sign updates s_i <- sign(field_i), keeping s_i on a zero field."""
    max_sweeps = settings.refine_max_sweeps if max_sweeps is None else max_sweeps
    current = labels0.labels.copy()
    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        updated = signs(_field(adj, db, current, params), fallback=current)
        if np.array_equal(updated, current):
            break
        current = updated
    return LabelVector(current), sweeps


def recover_csbm(
    adj: SimpleGraph,
    db: AttributeDatabase,
    params_hat: Optional[GenieParams] = None,
    truth: Optional[LabelVector] = None,
    seed: Optional[SeedLike] = None,
    method: str = "csbm",
) -> RecoveryReport:
    """Spectral start on the combined signal, then genie-score sweeps.

    Without ``params_hat`` the weights are estimated from the data.
    """
    _check_inputs(adj, db)
    if params_hat is None:
        labels0 = spectral_csbm_init(adj, db, _provisional_params(adj, db), seed=seed)
        params_hat = estimate_genie_params(adj, db, labels0)
        logger.debug("plug-in genie params %s", params_hat)
    else:
        labels0 = spectral_csbm_init(adj, db, params_hat, seed=seed)
    labels, sweeps = genie_refine(adj, db, labels0, params_hat)
    agreement = None if truth is None else label_overlap_up_to_sign(labels, truth)
    return RecoveryReport(labels_hat=labels, agreement=agreement, method=method, iterations=sweeps)
