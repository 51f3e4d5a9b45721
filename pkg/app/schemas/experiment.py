from enum import Enum
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from .reports import MatchMode, RegionLabel


class Method(str, Enum):
    match = "match"
    recover_pair = "recover-pair"
    recover_single = "recover-single"


class ExperimentConfig(BaseModel):
    name: str = Field(
        "sweep",
        title="Name",
        description="Label of the run, used in output file names.",
        examples=["cgmm-matching-crossing"],
    )
    model: Literal["cgmm", "ccsbm"] = Field(
        ...,
        title="Model",
        description="Model sampled in every cell.",
        examples=["cgmm"],
    )
    grid: Dict[str, List[float]] = Field(
        ...,
        title="Parameter Grid",
        description=(
            "Values per parameter; cells are the cartesian product. "
            "CCSBM grids may give the rates a and b instead of p and q."
        ),
        examples=[{"n": [500], "d": [400], "R": [6.2146], "rho": [0.12, 0.2, 0.28]}],
    )
    trials: int = Field(
        ...,
        title="Trials",
        description="Trials per cell.",
        ge=1,
        examples=[50],
    )
    seed: int = Field(
        0,
        title="Master Seed",
        description="Seed shared by every trial of the run.",
        ge=0,
        lt=2**64,
        examples=[20240601],
    )
    methods: List[Method] = Field(
        [Method.match],
        title="Methods",
        description="Stages run in each trial.",
        min_length=1,
        examples=[["match", "recover-pair", "recover-single"]],
    )
    match_mode: MatchMode = Field(
        MatchMode.kcore_oracle,
        title="Match Mode",
        description=(
            "Matcher for graph pairs: two-step with the given k-core step one "
            "(two-step means the oracle), or min-distance. CGMM cells use min-distance."
        ),
    )
    k: Optional[int] = Field(
        None,
        title="k",
        description="Core order; chosen automatically when omitted.",
        ge=0,
    )
    eps: Optional[float] = Field(
        None,
        title="Epsilon",
        description="Margin for the theory labels recorded per trial.",
        gt=0.0,
        lt=1.0,
    )
    C: Optional[float] = Field(
        None,
        title="Converse Constant",
        description="Constant of the log n - log d + C converse condition.",
    )
    oracle: bool = Field(
        False,
        title="Oracle Check",
        description="Cross-check min-distance matches against brute force when within budget.",
    )
    out: Optional[str] = Field(
        None,
        title="Output Directory",
        description="Where trials.csv, summary.json and phase.svg are written.",
        examples=["runs/crossing"],
    )

    @field_validator("grid")
    @classmethod
    def check_grid(cls, value):
        if not value:
            raise ValueError("grid must name at least one parameter")
        empty = [key for key, values in value.items() if not values]
        if empty:
            raise ValueError(f"grid lists are empty for {empty}")
        return value


class TrialRecord(BaseModel):
    cell_id: str = Field(..., title="Cell", description="Stable identifier of the grid cell.")
    trial: int = Field(..., title="Trial", description="Trial index within the cell.", ge=0)
    master: int = Field(..., title="Master Seed", description="Master seed of the run.")
    stream: int = Field(..., title="Stream", description="Stream derived from cell and trial.")
    params: Dict[str, float] = Field(..., title="Parameters", description="Cell parameter values.")
    failed: bool = Field(False, title="Failed", description="Whether a stage raised.")
    error: Optional[str] = Field(None, title="Error", description="Error message of a failed trial.")
    matched_exactly: Optional[bool] = Field(None, title="Matched Exactly")
    match_overlap: Optional[float] = Field(None, title="Match Overlap", ge=0.0, le=1.0)
    unmatched: Optional[int] = Field(None, title="Unmatched", description="Nodes left to the attribute step.")
    k: Optional[int] = Field(None, title="k")
    oracle_agrees: Optional[bool] = Field(None, title="Oracle Agreement")
    recovery_agreement: Optional[float] = Field(None, title="Pair Recovery Agreement", ge=0.0, le=1.0)
    recovered_exactly: Optional[bool] = Field(None, title="Pair Exact Recovery")
    single_agreement: Optional[float] = Field(None, title="Single Recovery Agreement", ge=0.0, le=1.0)
    single_recovered_exactly: Optional[bool] = Field(None, title="Single Exact Recovery")
    region: Optional[RegionLabel] = Field(None, title="Region", description="Theory labels of the cell.")
    wall_time: float = Field(0.0, title="Wall Time", description="Seconds spent on the trial.", ge=0.0)


class RateSummary(BaseModel):
    successes: int = Field(..., title="Successes", ge=0)
    total: int = Field(..., title="Completed Trials", ge=0)
    rate: Optional[float] = Field(None, title="Rate", ge=0.0, le=1.0)
    interval: Optional[Tuple[float, float]] = Field(
        None, title="Wilson 95% Interval", description="Score interval for the rate."
    )


class CellSummary(BaseModel):
    cell_id: str = Field(..., title="Cell")
    params: Dict[str, float] = Field(..., title="Parameters")
    trials: int = Field(..., title="Trials", ge=0)
    failed: int = Field(..., title="Failed Trials", ge=0)
    matching: Optional[RateSummary] = Field(None, title="Exact Matching")
    recovery_pair: Optional[RateSummary] = Field(None, title="Pair Exact Recovery")
    recovery_single: Optional[RateSummary] = Field(None, title="Single Exact Recovery")
    region: Optional[RegionLabel] = Field(None, title="Region")
    mean_wall_time: float = Field(0.0, title="Mean Wall Time", ge=0.0)


class SweepSummary(BaseModel):
    config: ExperimentConfig = Field(..., title="Config")
    cells: List[CellSummary] = Field(..., title="Cells")
    failed_cells: List[str] = Field(
        default_factory=list,
        title="Failed Cells",
        description="Cells in which every trial failed.",
    )
    wall_time: float = Field(0.0, title="Wall Time", description="Seconds for the whole sweep.", ge=0.0)
