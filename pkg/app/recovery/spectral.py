"""Spectral initialization and Lloyd refinement for the two-community GMM."""

from __future__ import annotations

import logging
from typing import Optional, Tuple

import numpy as np
from scipy.sparse.linalg import LinearOperator

from ..core.exceptions import ArgumentError, DegenerateInputError
from ..core.operations import label_overlap_up_to_sign
from ..core.settings import settings
from ..core.structures import AttributeDatabase, LabelVector
from ..models.random import SeedLike, make_rng
from .types import RecoveryReport

logger = logging.getLogger(__name__)


def power_iteration(
    operator: LinearOperator,
    seed: Optional[SeedLike] = None,
    max_iters: Optional[int] = None,
    tol: Optional[float] = None,
) -> Tuple[np.ndarray, int]:
    """Dominant eigenvector of a symmetric PSD operator and the iterations used."""
    max_iters = settings.power_max_iters if max_iters is None else max_iters
    tol = settings.power_tol if tol is None else tol
    rng = make_rng(settings.power_seed if seed is None else seed)
    n = operator.shape[0]
    x = rng.standard_normal(n)
    x /= np.linalg.norm(x)
    for iteration in range(1, max_iters + 1):
        y = operator.matvec(x)
        norm = np.linalg.norm(y)
        if norm == 0.0:
            raise DegenerateInputError("operator annihilated the iterate")
        y /= norm
        if y @ x < 0:
            y = -y
        change = np.linalg.norm(y - x)
        x = y
        if change < tol:
            return x, iteration
    return x, max_iters


def signs(vector: np.ndarray, fallback: Optional[np.ndarray] = None) -> np.ndarray:
    """Entrywise sign with zeros mapped to ``fallback`` (or +1)."""
    out = np.sign(vector).astype(np.int8)
    zero = out == 0
    out[zero] = 1 if fallback is None else fallback[zero]
    return out


def hollow_gram_operator(rows: np.ndarray, weight: float = 1.0) -> Tuple[LinearOperator, float]:
    """weight * H(D D^T) as a matvec, plus a shift making it PSD.

    H zeroes the diagonal; since D D^T is PSD the hollowed matrix is bounded
    below by -max ||x_i||^2.
    """
    squared = np.einsum("ij,ij->i", rows, rows)

    def matvec(v):
        v = np.ravel(v)
        return weight * (rows @ (rows.T @ v) - squared * v)

    n = rows.shape[0]
    return LinearOperator((n, n), matvec=matvec, dtype=np.float64), weight * float(squared.max(initial=0.0))


def shifted(operator: LinearOperator, shift: float) -> LinearOperator:
    return LinearOperator(
        operator.shape,
        matvec=lambda v: operator.matvec(np.ravel(v)) + shift * np.ravel(v),
        dtype=np.float64,
    )


def spectral_gmm_init(db: AttributeDatabase, seed: Optional[SeedLike] = None) -> LabelVector:
    """Sign pattern of the top eigenvector of the hollowed Gram matrix."""
    if db.n < 2:
        raise ArgumentError(f"spectral initialization needs n >= 2, got {db.n}")
    rows = db.rows
    if db.d == 0 or not np.any(rows):
        raise DegenerateInputError("database is identically zero")
    if np.all(rows == rows[0]):
        raise DegenerateInputError("every row is identical")
    operator, shift = hollow_gram_operator(rows)
    vector, iterations = power_iteration(shifted(operator, shift), seed=seed)
    logger.debug("gmm spectral init n=%d d=%d iterations=%d", db.n, db.d, iterations)
    return LabelVector(signs(vector))


def lloyd_refine(
    db: AttributeDatabase, labels0: LabelVector, max_iters: Optional[int] = None
) -> Tuple[LabelVector, int]:
    """Alternate mu_hat = mean(s_i x_i) and s_i = sign<x_i, mu_hat> until a fixpoint."""
    max_iters = settings.lloyd_max_iters if max_iters is None else max_iters
    if labels0.n != db.n:
        raise ArgumentError(f"{labels0.n} labels for {db.n} rows")
    current = labels0.labels.copy()
    iterations = 0
    for iterations in range(1, max_iters + 1):
        mu_hat = (current.astype(np.float64) @ db.rows) / db.n
        updated = signs(db.rows @ mu_hat, fallback=current)
        if np.array_equal(updated, current):
            break
        current = updated
    return LabelVector(current), iterations


def recover_gmm(
    db: AttributeDatabase,
    truth: Optional[LabelVector] = None,
    seed: Optional[SeedLike] = None,
    method: str = "gmm",
) -> RecoveryReport:
    labels0 = spectral_gmm_init(db, seed=seed)
    labels, iterations = lloyd_refine(db, labels0)
    agreement = None if truth is None else label_overlap_up_to_sign(labels, truth)
    return RecoveryReport(
        labels_hat=labels, agreement=agreement, method=method, iterations=iterations
    )
