import math
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


config = ConfigDict(frozen=True, extra="forbid")


class CgmmParams(BaseModel):
    model_config = config

    model: Literal["cgmm"] = Field(
        "cgmm",
        title="Model",
        description="Discriminator for correlated Gaussian mixture parameters.",
    )
    n: int = Field(
        ...,
        title="Nodes",
        description="Number of rows in each database.",
        ge=1,
        examples=[500],
    )
    d: int = Field(
        ...,
        title="Dimension",
        description="Attribute dimension.",
        ge=1,
        examples=[400],
    )
    rho: float = Field(
        ...,
        title="Correlation",
        description="Per-coordinate correlation of the two noise vectors.",
        ge=0.0,
        le=1.0,
        examples=[0.3],
    )
    mu: Optional[List[float]] = Field(
        None,
        title="Mean Vector",
        description="Explicit community mean; takes precedence over R.",
        examples=[[1.0, -1.0]],
    )
    R: Optional[float] = Field(
        None,
        title="Mean Power",
        description="Squared norm of the mean, which is then drawn uniformly on the sphere.",
        gt=0.0,
        examples=[6.2],
    )

    @model_validator(mode="after")
    def check_mean(self):
        if self.mu is None and self.R is None:
            raise ValueError("either mu or R must be given")
        if self.mu is not None:
            if len(self.mu) != self.d:
                raise ValueError(f"mu has {len(self.mu)} entries, expected d={self.d}")
            if not all(math.isfinite(v) for v in self.mu):
                raise ValueError("mu must be finite")
        return self

    @property
    def mean_power(self) -> float:
        if self.mu is not None:
            return float(sum(v * v for v in self.mu))
        return float(self.R)


class CcsbmParams(BaseModel):
    model_config = config

    model: Literal["ccsbm"] = Field(
        "ccsbm",
        title="Model",
        description="Discriminator for correlated contextual SBM parameters.",
    )
    n: int = Field(
        ...,
        title="Nodes",
        description="Number of vertices of the parent graph.",
        ge=1,
        examples=[1000],
    )
    p: float = Field(
        ...,
        title="Intra Probability",
        description="Parent edge probability inside a community.",
        ge=0.0,
        le=1.0,
        examples=[0.0276],
    )
    q: float = Field(
        ...,
        title="Inter Probability",
        description="Parent edge probability across communities.",
        ge=0.0,
        le=1.0,
        examples=[0.0138],
    )
    s: float = Field(
        ...,
        title="Subsampling",
        description="Probability that a parent edge survives in each copy.",
        ge=0.0,
        le=1.0,
        examples=[0.8],
    )
    R: float = Field(
        ...,
        title="Mean Power",
        description="Squared norm of the community mean.",
        gt=0.0,
        examples=[6.9],
    )
    d: int = Field(
        ...,
        title="Dimension",
        description="Attribute dimension; 0 drops node attributes.",
        ge=0,
        examples=[300],
    )
    rho: float = Field(
        ...,
        title="Correlation",
        description="Per-coordinate correlation of the two noise vectors.",
        ge=0.0,
        le=1.0,
        examples=[0.2],
    )
    allow_equal: bool = Field(
        False,
        title="Allow p = q",
        description="Permit p = q, which reduces the parent graph to Erdos-Renyi.",
        examples=[False],
    )

    @model_validator(mode="after")
    def check_probabilities(self):
        if self.p < self.q or (self.p == self.q and not self.allow_equal):
            raise ValueError(f"p={self.p} must exceed q={self.q}")
        return self

    @property
    def mean_power(self) -> float:
        return self.R

    @classmethod
    def from_rates(cls, n: int, a: float, b: float, **kwargs) -> "CcsbmParams":
        """Build parameters from p = a log n / n and q = b log n / n."""
        scale = math.log(n) / n
        return cls(n=n, p=a * scale, q=b * scale, **kwargs)


ModelParams = Union[CgmmParams, CcsbmParams]


class Seed(BaseModel):
    model_config = config

    master: int = Field(
        ...,
        title="Master Seed",
        description="Seed shared by every trial of a run.",
        ge=0,
        lt=2**64,
        examples=[20240601],
    )
    stream: int = Field(
        0,
        title="Stream",
        description="Trial stream under the master seed.",
        ge=0,
        lt=2**64,
        examples=[0],
    )


class RateParams(BaseModel):
    model_config = config

    a: float = Field(..., title="a", description="p = a log n / n.", gt=0.0)
    b: float = Field(..., title="b", description="q = b log n / n.", gt=0.0)
    c: float = Field(..., title="c", description="Single-database attribute SNR.", ge=0.0)
    c_prime: float = Field(
        ..., title="c'", description="Averaged-attribute SNR.", ge=0.0
    )

    @model_validator(mode="after")
    def check_order(self):
        if self.a <= self.b:
            raise ValueError("a must exceed b")
        return self
