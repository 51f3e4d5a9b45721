from ..core.exceptions import ArgumentError
from ..core.operations import graph_union
from ..core.structures import AttributeDatabase, CorrelatedInstance, Permutation
from .types import MergedInstance


def merge(inst: CorrelatedInstance, pi: Permutation) -> MergedInstance:
    """Average x_i with y_pi(i) and take the union of G1 with G2 pulled back by pi."""
    if pi.n != inst.n:
        raise ArgumentError(f"permutation of size {pi.n} for n={inst.n}")
    avg = (inst.db1.rows + inst.db2.rows[pi.mapping]) / 2.0
    union = graph_union(inst.graph1, inst.graph2, pi) if inst.has_graphs else None
    return MergedInstance(avg_db=AttributeDatabase(avg), source_perm=pi, union_graph=union)
