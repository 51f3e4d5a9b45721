"""Two-step matching: k-core matching on edges, then attributes for the rest."""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from ..core.exceptions import ArgumentError, InternalError
from ..core.structures import AttributeDatabase, CorrelatedInstance, PartialMatching, Permutation
from ..schemas.params import CcsbmParams
from ..schemas.reports import MatchMode
from .assignment import MatchResult, min_distance_match
from .kcore import kcore_match_exact, kcore_match_oracle, select_k

logger = logging.getLogger(__name__)


def matched_cost(
    X: AttributeDatabase, Y: AttributeDatabase, domain: np.ndarray, image: np.ndarray
) -> float:
    if X.d == 0 or domain.size == 0:
        return 0.0
    return float(np.sum((X.rows[domain] - Y.rows[image]) ** 2))


def default_k(inst: CorrelatedInstance) -> int:
    params = inst.params
    if not isinstance(params, CcsbmParams):
        raise ArgumentError("k can only be chosen automatically for CCSBM instances")
    return select_k(params.n, params.p, params.s)


def kcore_match(
    inst: CorrelatedInstance,
    mode: MatchMode = MatchMode.kcore_oracle,
    k: Optional[int] = None,
) -> MatchResult:
    """Step one alone, as a partial matching."""
    if not inst.has_graphs:
        raise ArgumentError("k-core matching needs a graph pair")
    k = default_k(inst) if k is None else k
    if mode == MatchMode.kcore_oracle:
        matching = kcore_match_oracle(inst, k)
    elif mode == MatchMode.kcore_exact:
        matching = kcore_match_exact(inst.graph1, inst.graph2, k)
    else:
        raise ArgumentError(f"step-one mode must be a k-core mode, got {mode}")
    return MatchResult(
        matching=matching,
        total_cost=matched_cost(inst.db1, inst.db2, matching.domain, matching.image),
        mode=mode,
        unmatched=inst.n - matching.size,
        k=k,
    )


def two_step_match(
    inst: CorrelatedInstance,
    mode: MatchMode = MatchMode.kcore_oracle,
    k: Optional[int] = None,
) -> MatchResult:
    step1 = kcore_match(inst, mode, k)
    matching: PartialMatching = step1.matching
    nodes = np.arange(inst.n)
    free1 = np.setdiff1d(nodes, matching.domain)
    free2 = np.setdiff1d(nodes, matching.image)
    if free1.size != free2.size:
        raise InternalError(f"step-two sides differ: {free1.size} != {free2.size}")

    mapping = matching.to_array()
    if free1.size:
        rest = min_distance_match(inst.db1.take(free1), inst.db2.take(free2))
        mapping[free1] = free2[rest.permutation().mapping]
    pi = Permutation(mapping)
    logger.debug(
        "two-step k=%d |M|=%d |F|=%d", step1.k, matching.size, free1.size
    )
    return MatchResult(
        matching=pi,
        total_cost=matched_cost(inst.db1, inst.db2, nodes, pi.mapping),
        mode=MatchMode.two_step,
        unmatched=int(free1.size),
        k=step1.k,
    )
