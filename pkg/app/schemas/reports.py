from enum import Enum
from typing import Dict, Optional

from pydantic import BaseModel, ConfigDict, Field


class MatchMode(str, Enum):
    min_distance = "min-distance"
    kcore_oracle = "kcore-oracle"
    kcore_exact = "kcore-exact"
    two_step = "two-step"


class MatchingLabel(str, Enum):
    achievable = "achievable"
    impossible = "impossible"
    gap = "gap"


class RecoveryLabel(str, Enum):
    possible = "possible"
    impossible = "impossible"
    gap = "gap"


class RegionLabel(BaseModel):
    model_config = ConfigDict(frozen=True)

    matching: MatchingLabel = Field(
        ...,
        title="Matching",
        description="Exact matching label of the parameter point.",
        examples=["achievable"],
    )
    recovery_single: RecoveryLabel = Field(
        ...,
        title="Single Recovery",
        description="Exact community recovery label from one copy.",
        examples=["impossible"],
    )
    recovery_pair: RecoveryLabel = Field(
        ...,
        title="Pair Recovery",
        description="Exact community recovery label from the matched pair.",
        examples=["possible"],
    )
    flags: Dict[str, bool] = Field(
        default_factory=dict,
        title="Condition Flags",
        description="Finite-n proxies of the asymptotic side conditions.",
        examples=[{"high_dim": True, "mu_strong": False}],
    )


class MatchReport(BaseModel):
    mode: MatchMode = Field(..., title="Mode", description="Matcher that produced the result.")
    total_cost: float = Field(
        ...,
        title="Total Cost",
        description="Sum of squared distances over matched pairs.",
    )
    matched: int = Field(..., title="Matched", description="Number of matched nodes.", ge=0)
    unmatched: int = Field(
        0,
        title="Unmatched",
        description="Size of the node set left to the attribute step.",
        ge=0,
    )
    k: Optional[int] = Field(None, title="k", description="Core order used by k-core matching.")
    overlap: Optional[float] = Field(
        None,
        title="Overlap",
        description="Overlap with the true permutation when it is known.",
        ge=0.0,
        le=1.0,
    )
    success: Optional[bool] = Field(
        None,
        title="Exact Match",
        description="Whether every matched pair agrees with the true permutation.",
    )
    oracle_agrees: Optional[bool] = Field(
        None,
        title="Oracle Agreement",
        description="Whether the brute-force oracle confirms the result.",
    )


class RecoveryReportSchema(BaseModel):
    method: str = Field(..., title="Method", description="Recovery route taken.", examples=["csbm-pair"])
    agreement: Optional[float] = Field(
        None,
        title="Agreement",
        description="Label agreement with the truth up to a global sign.",
        ge=0.0,
        le=1.0,
    )
    exact: Optional[bool] = Field(
        None,
        title="Exact Recovery",
        description="Whether every label is recovered up to a global sign.",
    )
    iterations: int = Field(..., title="Iterations", description="Refinement sweeps used.", ge=0)
    matched_exactly: Optional[bool] = Field(
        None,
        title="Matched Exactly",
        description="Whether the matching step returned the true permutation.",
    )
    match_overlap: Optional[float] = Field(
        None,
        title="Match Overlap",
        description="Overlap of the matching step with the truth.",
        ge=0.0,
        le=1.0,
    )
    region: Optional[RegionLabel] = Field(
        None,
        title="Region",
        description="Theory labels of the generating parameters.",
    )
