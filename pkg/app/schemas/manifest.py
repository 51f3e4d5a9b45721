from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field

from .params import CcsbmParams, CgmmParams, Seed


class InstanceManifest(BaseModel):
    params: Union[CgmmParams, CcsbmParams] = Field(
        ...,
        title="Parameters",
        description="Generating parameters of the instance.",
        discriminator="model",
    )
    seed: Optional[Seed] = Field(
        None,
        title="Seed",
        description="Seed the instance was sampled from, when known.",
    )
    mu: List[float] = Field(
        ...,
        title="Mean Vector",
        description="Realized community mean.",
    )
    balance: float = Field(
        ...,
        title="Label Balance",
        description="Realized fraction of +1 labels in the first copy.",
        ge=0.0,
        le=1.0,
    )
    files: Dict[str, str] = Field(
        ...,
        title="Files",
        description="Role to file name map inside the instance directory.",
        examples=[{"db1": "db1.csv", "truth": "truth.perm"}],
    )
