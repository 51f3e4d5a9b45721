"""Match, merge, recover."""

from __future__ import annotations

import logging
import math
from dataclasses import replace
from typing import Optional

from ..core.exceptions import ArgumentError
from ..core.operations import overlap
from ..core.structures import AttributeDatabase, CorrelatedInstance
from ..matching.assignment import MatchResult, min_distance_match
from ..matching.two_step import two_step_match
from ..models.random import SeedLike
from ..schemas.params import CcsbmParams, CgmmParams
from ..schemas.reports import MatchMode
from .csbm import GenieParams, recover_csbm
from .merge import merge
from .spectral import recover_gmm
from .types import RecoveryReport

logger = logging.getLogger(__name__)


def genie_params_for(params: CcsbmParams, use_pair: bool) -> GenieParams:
    """Genie weights from the generating parameters.

    The union of two s-subsamples keeps an edge with probability 1-(1-s)^2 and
    the averaged attributes have noise variance (1+rho)/2 per coordinate.
    """
    n = params.n
    scale = n / math.log(n)
    if use_pair:
        keep = 1.0 - (1.0 - params.s) ** 2
        r_squared = 2.0 * params.R / (1.0 + params.rho)
    else:
        keep = params.s
        r_squared = params.R
    return GenieParams(
        a_prime=params.p * keep * scale,
        b_prime=params.q * keep * scale,
        r_prime=math.sqrt(r_squared),
        d=params.d,
        n=n,
    )


def whiten(db: AttributeDatabase, rho: float) -> AttributeDatabase:
    """Rescale averaged rows to unit noise variance."""
    if db.d == 0:
        return db
    return AttributeDatabase(db.rows / math.sqrt((1.0 + rho) / 2.0))


def match_instance(
    inst: CorrelatedInstance, match_mode: Optional[MatchMode] = None, k: Optional[int] = None
) -> MatchResult:
    """Match the copies of ``inst``.

    CGMM pairs match by min-distance. Graph pairs use two-step matching with
    the given step-one mode (``two-step`` means the k-core oracle), or plain
    min-distance when asked.
    """
    if isinstance(inst.params, CgmmParams):
        if match_mode not in (None, MatchMode.min_distance):
            raise ArgumentError(f"CGMM instances match by min-distance, not {match_mode}")
        return min_distance_match(inst.db1, inst.db2)
    if match_mode == MatchMode.min_distance:
        if inst.d == 0:
            raise ArgumentError("min-distance matching needs attributes")
        return min_distance_match(inst.db1, inst.db2)
    step_mode = MatchMode.kcore_oracle if match_mode in (None, MatchMode.two_step) else match_mode
    return two_step_match(inst, step_mode, k=k)


def recover_pipeline(
    inst: CorrelatedInstance,
    match_mode: Optional[MatchMode] = None,
    use_pair: bool = True,
    seed: Optional[SeedLike] = None,
    k: Optional[int] = None,
    known_params: bool = True,
    match: Optional[MatchResult] = None,
) -> RecoveryReport:
    """Recover the labels of the first copy.

    With ``use_pair`` the copies are matched, merged and recovered jointly;
    otherwise only the first copy is used. ``match_mode`` picks the step-one
    k-core mode for graph pairs (oracle by default); a precomputed ``match``
    skips the matching step.
    """
    params = inst.params
    if not use_pair:
        if isinstance(params, CgmmParams):
            return recover_gmm(inst.db1, truth=inst.labels1, seed=seed, method="gmm-single")
        genie = genie_params_for(params, use_pair=False) if known_params else None
        return recover_csbm(
            inst.graph1, inst.db1, genie, truth=inst.labels1, seed=seed, method="csbm-single"
        )

    if match is None:
        match = match_instance(inst, match_mode, k)
    pi_hat = match.permutation()
    matched_exactly = pi_hat == inst.truth_perm
    match_overlap = overlap(pi_hat, inst.truth_perm)
    logger.debug("pipeline matched_exactly=%s overlap=%.4f", matched_exactly, match_overlap)
    merged = merge(inst, pi_hat)

    if isinstance(params, CgmmParams):
        report = recover_gmm(merged.avg_db, truth=inst.labels1, seed=seed, method="gmm-pair")
    else:
        genie = genie_params_for(params, use_pair=True) if known_params else None
        report = recover_csbm(
            merged.union_graph,
            whiten(merged.avg_db, params.rho),
            genie,
            truth=inst.labels1,
            seed=seed,
            method="csbm-pair",
        )
    return replace(report, matched_exactly=bool(matched_exactly), match_overlap=match_overlap)
