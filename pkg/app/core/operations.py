"""Structural operations on the core types. All functions are pure."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .exceptions import ArgumentError
from .structures import (
    AttributeDatabase,
    LabelVector,
    PartialMatching,
    Permutation,
    SimpleGraph,
)

Assignment = Union[Sequence[int], np.ndarray, LabelVector, Permutation, PartialMatching]


def _as_array(values: Assignment) -> np.ndarray:
    if isinstance(values, LabelVector):
        return values.labels
    if isinstance(values, Permutation):
        return values.mapping
    if isinstance(values, PartialMatching):
        return values.to_array()
    return np.asarray(values).ravel()


def overlap(f: Assignment, g: Assignment) -> float:
    """Fraction of positions where ``f`` and ``g`` agree."""
    f, g = _as_array(f), _as_array(g)
    if f.size != g.size:
        raise ArgumentError(f"length mismatch: {f.size} != {g.size}")
    if f.size == 0:
        raise ArgumentError("overlap needs at least one position")
    return float(np.count_nonzero(f == g)) / f.size


def label_overlap_up_to_sign(a: LabelVector, b: LabelVector) -> float:
    """Agreement of two labelings under the better of the two global signs."""
    agree = overlap(a, b)
    return max(agree, 1.0 - agree)


def apply_permutation(db: AttributeDatabase, pi: Permutation) -> AttributeDatabase:
    """Row i of the result is row pi^-1(i) of ``db``, i.e. row i moves to pi(i)."""
    if pi.n != db.n:
        raise ArgumentError(f"permutation of size {pi.n} for {db.n} rows")
    return AttributeDatabase(db.rows[pi.inverse().mapping])


def _pulled_back(A: SimpleGraph, B: SimpleGraph, pi: Permutation):
    if not (A.n == B.n == pi.n):
        raise ArgumentError(f"size mismatch: {A.n}, {B.n}, {pi.n}")
    index = pi.mapping
    return B.adjacency[index][:, index]


def graph_union(A: SimpleGraph, B: SimpleGraph, pi: Permutation) -> SimpleGraph:
    """Edge (i, j) iff it is in A or (pi(i), pi(j)) is in B."""
    return SimpleGraph(A.n, A.adjacency.maximum(_pulled_back(A, B, pi)))


def graph_intersection(A: SimpleGraph, B: SimpleGraph, pi: Permutation) -> SimpleGraph:
    """Edge (i, j) iff it is in A and (pi(i), pi(j)) is in B."""
    return SimpleGraph(A.n, A.adjacency.multiply(_pulled_back(A, B, pi)).tocsr())


def core_numbers(G: SimpleGraph) -> np.ndarray:
    """Core number of every node by bucket-queue peeling, O(|E|)."""
    n = G.n
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    indptr = G.adjacency.indptr.tolist()
    indices = G.adjacency.indices.tolist()
    degree = G.degrees().tolist()
    max_degree = max(degree)

    bins = [0] * (max_degree + 1)
    for value in degree:
        bins[value] += 1
    start = 0
    for value in range(max_degree + 1):
        bins[value], start = start, start + bins[value]

    position = [0] * n
    vertices = [0] * n
    for v in range(n):
        position[v] = bins[degree[v]]
        vertices[position[v]] = v
        bins[degree[v]] += 1
    for value in range(max_degree, 0, -1):
        bins[value] = bins[value - 1]
    bins[0] = 0

    for i in range(n):
        v = vertices[i]
        for u in indices[indptr[v] : indptr[v + 1]]:
            if degree[u] > degree[v]:
                du, pu = degree[u], position[u]
                pw = bins[du]
                w = vertices[pw]
                if u != w:
                    position[u], position[w] = pw, pu
                    vertices[pu], vertices[pw] = w, u
                bins[du] += 1
                degree[u] -= 1
    return np.asarray(degree, dtype=np.int64)


def k_core(G: SimpleGraph, k: int) -> np.ndarray:
    """Sorted nodes of the maximal induced subgraph with minimum degree >= k."""
    if k < 0:
        raise ArgumentError(f"k must be non-negative, got {k}")
    if k == 0:
        return np.arange(G.n, dtype=np.int64)
    return np.flatnonzero(core_numbers(G) >= k).astype(np.int64)


def peel(G: SimpleGraph, k: int, schedule: Optional[Iterable[int]] = None) -> np.ndarray:
    """Remove nodes of degree < k one at a time, scanning in ``schedule`` order.

    Reaches the same node set as :func:`k_core` for every schedule.
    """
    if k < 0:
        raise ArgumentError(f"k must be non-negative, got {k}")
    order = list(range(G.n)) if schedule is None else [int(v) for v in schedule]
    if sorted(order) != list(range(G.n)):
        raise ArgumentError("schedule must list every node exactly once")
    degree = G.degrees().astype(np.int64)
    alive = np.ones(G.n, dtype=bool)
    queue = deque(v for v in order if degree[v] < k)
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for u in G.neighbors(v):
            if alive[u]:
                degree[u] -= 1
                if degree[u] == k - 1:
                    queue.append(u)
    return np.flatnonzero(alive).astype(np.int64)
