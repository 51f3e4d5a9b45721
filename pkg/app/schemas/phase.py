from enum import Enum
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from .reports import RegionLabel


class ClassifierId(str, Enum):
    cgmm_match = "cgmm-match"
    ccsbm_match = "ccsbm-match"
    cgmm_recover = "cgmm-recover"
    ccsbm_recover = "ccsbm-recover"


class AxisSpec(BaseModel):
    name: str = Field(
        ...,
        title="Parameter",
        description="Model parameter swept along this axis; CCSBM grids also accept the rates a and b.",
        examples=["rho"],
    )
    start: float = Field(..., title="Start", description="First grid value.", examples=[0.0])
    stop: float = Field(..., title="Stop", description="Last grid value (inclusive).", examples=[1.0])
    num: int = Field(
        ...,
        title="Points",
        description="Number of grid values.",
        ge=1,
        le=2000,
        examples=[50],
    )
    scale: Literal["linear", "log"] = Field(
        "linear",
        title="Scale",
        description="Spacing of the grid values.",
    )

    @model_validator(mode="after")
    def check_scale(self):
        if self.scale == "log" and (self.start <= 0 or self.stop <= 0):
            raise ValueError("log axes need positive end points")
        return self


class GridSpec(BaseModel):
    base: Dict[str, Any] = Field(
        ...,
        title="Fixed Parameters",
        description="Parameters shared by every cell.",
        examples=[{"n": 10000, "R": 9.2}],
    )
    x: AxisSpec = Field(..., title="X Axis", description="Horizontal sweep.")
    y: AxisSpec = Field(..., title="Y Axis", description="Vertical sweep.")
    eps: Optional[float] = Field(
        None,
        title="Epsilon",
        description="Margin of the threshold inequalities; defaults to the configured value.",
        gt=0.0,
        lt=1.0,
    )
    C: Optional[float] = Field(
        None,
        title="Converse Constant",
        description="Constant of the log n - log d + C converse condition.",
    )

    @model_validator(mode="after")
    def check_axes(self):
        if self.x.name == self.y.name:
            raise ValueError("the two axes must sweep different parameters")
        return self


class PhaseCell(BaseModel):
    x: float = Field(..., title="X", description="Value of the horizontal parameter.")
    y: float = Field(..., title="Y", description="Value of the vertical parameter.")
    label: str = Field(
        ...,
        title="Label",
        description="Label shown on the map for the selected classifier, or 'invalid'.",
        examples=["achievable", "pair-only"],
    )
    region: Optional[RegionLabel] = Field(
        None,
        title="Region",
        description="Full classification; absent for invalid parameter cells.",
    )


class PhaseTable(BaseModel):
    classifier: ClassifierId = Field(..., title="Classifier", description="Classifier evaluated on the grid.")
    x_name: str = Field(..., title="X Parameter", description="Horizontal parameter name.")
    y_name: str = Field(..., title="Y Parameter", description="Vertical parameter name.")
    cells: List[PhaseCell] = Field(..., title="Cells", description="One entry per grid cell, x varying fastest.")
