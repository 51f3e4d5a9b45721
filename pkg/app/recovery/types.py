from dataclasses import dataclass
from typing import Optional

from ..core.structures import AttributeDatabase, LabelVector, Permutation, SimpleGraph


@dataclass(frozen=True)
class MergedInstance:
    """Averaged attributes and union graph of a pair aligned by ``source_perm``."""

    avg_db: AttributeDatabase
    source_perm: Permutation
    union_graph: Optional[SimpleGraph] = None


@dataclass(frozen=True)
class RecoveryReport:
    labels_hat: LabelVector
    agreement: Optional[float]
    method: str
    iterations: int
    matched_exactly: Optional[bool] = None
    match_overlap: Optional[float] = None

    @property
    def exact(self) -> Optional[bool]:
        if self.agreement is None:
            return None
        return self.agreement == 1.0
