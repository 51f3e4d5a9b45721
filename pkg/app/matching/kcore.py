"""k-core matching on the edges of two correlated graphs."""

from __future__ import annotations

import logging
import math
from typing import List, Optional, Set

import numpy as np

from ..core.exceptions import ArgumentError, CapacityError
from ..core.operations import graph_intersection, k_core
from ..core.settings import settings
from ..core.structures import CorrelatedInstance, PartialMatching, SimpleGraph

logger = logging.getLogger(__name__)


def select_k(n: int, p: float, s: float) -> int:
    """Core order max(x / (log x)^2, log n / (log log n)^2) with x = n p s^2, rounded up.

    The first branch only participates when x > e.
    """
    if n < 3:
        raise ArgumentError(f"select_k needs n >= 3, got {n}")
    x = n * p * s * s
    dense = x / math.log(x) ** 2 if x > math.e else 0.0
    sparse = math.log(n) / math.log(math.log(n)) ** 2
    return max(1, math.ceil(max(dense, sparse)))


def kcore_match_oracle(inst: CorrelatedInstance, k: int) -> PartialMatching:
    """Truth restricted to the k-core of the true intersection graph."""
    if not inst.has_graphs:
        raise ArgumentError("k-core matching needs a graph pair")
    intersection = graph_intersection(inst.graph1, inst.graph2, inst.truth_perm)
    core = k_core(intersection, k)
    logger.debug("k-core oracle k=%d |M|=%d of n=%d", k, core.size, inst.n)
    return PartialMatching.restrict(inst.truth_perm, core)


def _neighbour_sets(graph: SimpleGraph) -> List[Set[int]]:
    return [set(graph.neighbors(i).tolist()) for i in range(graph.n)]


class _Search:
    """Depth-first search for a lexicographically smallest matching of a given size."""

    def __init__(self, A, B, k, cand1, cand2, max_states):
        self.A, self.B, self.k = A, B, k
        self.cand1, self.cand2 = cand1, cand2
        self.max_states = max_states
        self.states = 0

    def run(self, size: int) -> Optional[list]:
        self.size = size
        self.chosen_u, self.chosen_v, self.good = [], [], []
        self.used = set()
        if self._extend(0):
            return list(zip(self.chosen_u, self.chosen_v))
        return None

    def _extend(self, start: int) -> bool:
        depth = len(self.chosen_u)
        if depth == self.size:
            return all(count >= self.k for count in self.good)
        self.states += 1
        if self.max_states is not None and self.states > self.max_states:
            raise CapacityError(f"k-core search exceeded {self.max_states} states")
        after = self.size - depth - 1
        for index in range(start, len(self.cand1) - after):
            u = self.cand1[index]
            for v in self.cand2:
                if v in self.used:
                    continue
                links = [
                    t
                    for t, (w, x) in enumerate(zip(self.chosen_u, self.chosen_v))
                    if w in self.A[u] and x in self.B[v]
                ]
                # every future pair adds at most one good neighbour
                if len(links) + after < self.k:
                    continue
                for t in links:
                    self.good[t] += 1
                if all(count + after >= self.k for count in self.good):
                    self.chosen_u.append(u)
                    self.chosen_v.append(v)
                    self.good.append(len(links))
                    self.used.add(v)
                    if self._extend(index + 1):
                        return True
                    self.chosen_u.pop()
                    self.chosen_v.pop()
                    self.good.pop()
                    self.used.discard(v)
                for t in links:
                    self.good[t] -= 1
        return False


def kcore_match_exact(
    G1: SimpleGraph,
    G2: SimpleGraph,
    k: int,
    limit: Optional[int] = None,
    max_states: Optional[int] = None,
) -> PartialMatching:
    """Largest matching (M, phi) whose intersection graph on M has min degree >= k.

    Ties between largest matchings go to the lexicographically smallest
    sorted pair list. Exhaustive, so refuses graphs above ``limit`` nodes.
    """
    limit = settings.kcore_exact_limit if limit is None else limit
    if G1.n != G2.n:
        raise ArgumentError(f"graph sizes differ: {G1.n} != {G2.n}")
    if G1.n > limit:
        raise CapacityError(f"exhaustive k-core matching is limited to n <= {limit}")
    if k < 0:
        raise ArgumentError(f"k must be non-negative, got {k}")
    n = G1.n
    cand1 = [int(u) for u in np.flatnonzero(G1.degrees() >= k)]
    cand2 = [int(v) for v in np.flatnonzero(G2.degrees() >= k)]
    search = _Search(_neighbour_sets(G1), _neighbour_sets(G2), k, cand1, cand2, max_states)
    for size in range(min(len(cand1), len(cand2)), 0, -1):
        if size < k + 1:
            break
        pairs = search.run(size)
        if pairs is not None:
            domain, image = zip(*pairs)
            return PartialMatching(domain, image, n)
    return PartialMatching.empty(n)
