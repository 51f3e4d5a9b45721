from typing import List, Optional, Union

from pydantic import BaseModel, Field

from .experiment import Method
from .params import CcsbmParams, CgmmParams, Seed
from .phase import ClassifierId, GridSpec
from .reports import MatchMode


class ClassifyRequest(BaseModel):
    params: Union[CgmmParams, CcsbmParams] = Field(
        ...,
        title="Parameters",
        description="Model parameters to classify.",
        discriminator="model",
    )
    eps: Optional[float] = Field(
        None,
        title="Epsilon",
        description="Margin of the threshold inequalities.",
        gt=0.0,
        lt=1.0,
        examples=[0.1],
    )
    C: Optional[float] = Field(
        None,
        title="Converse Constant",
        description="Constant of the log n - log d + C converse condition.",
        examples=[0.0],
    )


class PhaseRequest(BaseModel):
    grid: GridSpec = Field(..., title="Grid", description="Axes and fixed parameters.")
    classifier: ClassifierId = Field(
        ...,
        title="Classifier",
        description="Classifier evaluated on every cell.",
        examples=["cgmm-recover"],
    )


class TrialRequest(BaseModel):
    params: Union[CgmmParams, CcsbmParams] = Field(
        ...,
        title="Parameters",
        description="Model parameters of the sampled instance.",
        discriminator="model",
    )
    seed: Seed = Field(..., title="Seed", description="Seed of the sampled instance.")
    methods: List[Method] = Field(
        [Method.match],
        title="Methods",
        description="Stages to run.",
        min_length=1,
    )
    match_mode: MatchMode = Field(
        MatchMode.kcore_oracle,
        title="Match Mode",
        description=(
            "Matcher for graph pairs: two-step with the given k-core step one "
            "(two-step means the oracle), or min-distance. CGMM cells use min-distance."
        ),
    )
    k: Optional[int] = Field(None, title="k", description="Core order; automatic when omitted.", ge=0)
    eps: Optional[float] = Field(None, title="Epsilon", gt=0.0, lt=1.0)
    C: Optional[float] = Field(None, title="Converse Constant")
