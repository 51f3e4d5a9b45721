"""Foundational immutable types shared by every corrnet module.

Node indices are 0-based throughout; only human-facing output is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np
import scipy.sparse as sp

from ..schemas.params import ModelParams
from .exceptions import ArgumentError


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class LabelVector:
    labels: np.ndarray

    def __post_init__(self):
        labels = np.array(self.labels, dtype=np.int8).ravel()
        if labels.size and not np.all(np.abs(labels) == 1):
            raise ArgumentError("labels must be -1 or +1")
        object.__setattr__(self, "labels", _frozen(labels))

    @property
    def n(self) -> int:
        return int(self.labels.size)

    def __len__(self) -> int:
        return self.n

    def __neg__(self) -> LabelVector:
        return LabelVector(-self.labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, LabelVector) and np.array_equal(
            self.labels, other.labels
        )

    def balance(self) -> float:
        """Fraction of +1 entries."""
        return float(np.mean(self.labels == 1)) if self.n else 0.0


@dataclass(frozen=True)
class Permutation:
    mapping: np.ndarray

    def __post_init__(self):
        mapping = np.array(self.mapping, dtype=np.int64).ravel()
        n = mapping.size
        if n and (
            mapping.min() < 0
            or mapping.max() >= n
            or np.bincount(mapping, minlength=n).max() != 1
        ):
            raise ArgumentError("mapping is not a bijection on 0..n-1")
        object.__setattr__(self, "mapping", _frozen(mapping))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(np.arange(n))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> Permutation:
        # Generator.permutation is a Fisher-Yates shuffle
        return cls(rng.permutation(n))

    @property
    def n(self) -> int:
        return int(self.mapping.size)

    def __len__(self) -> int:
        return self.n

    def __call__(self, i):
        return self.mapping[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and np.array_equal(
            self.mapping, other.mapping
        )

    def inverse(self) -> Permutation:
        inverse = np.empty_like(self.mapping)
        inverse[self.mapping] = np.arange(self.n)
        return Permutation(inverse)


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on nodes 0..n-1.

    ``adjacency`` is a symmetric CSR matrix with sorted indices, so
    ``indptr``/``indices`` double as sorted adjacency lists.
    """

    n: int
    adjacency: sp.csr_matrix = field(repr=False)

    def __post_init__(self):
        adjacency = sp.csr_matrix(self.adjacency, copy=True)
        if adjacency.shape != (self.n, self.n):
            raise ArgumentError(
                f"adjacency shape {adjacency.shape} does not match n={self.n}"
            )
        adjacency.eliminate_zeros()
        adjacency.data[:] = 1
        adjacency = adjacency.astype(np.int8)
        if adjacency.diagonal().any():
            raise ArgumentError("self-loops are not allowed")
        if (adjacency != adjacency.T).nnz:
            raise ArgumentError("adjacency must be symmetric")
        adjacency.sort_indices()
        object.__setattr__(self, "adjacency", adjacency)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> SimpleGraph:
        pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        return cls.from_arrays(n, pairs[:, 0], pairs[:, 1])

    @classmethod
    def from_arrays(cls, n: int, rows: np.ndarray, cols: np.ndarray) -> SimpleGraph:
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        if rows.size and (
            min(rows.min(), cols.min()) < 0 or max(rows.max(), cols.max()) >= n
        ):
            raise ArgumentError("edge endpoint out of range")
        if np.any(rows == cols):
            raise ArgumentError("self-loops are not allowed")
        data = np.ones(2 * rows.size, dtype=np.int8)
        adjacency = sp.coo_matrix(
            (data, (np.concatenate([rows, cols]), np.concatenate([cols, rows]))),
            shape=(n, n),
        ).tocsr()
        adjacency.sum_duplicates()
        return cls(n, adjacency)

    @classmethod
    def empty(cls, n: int) -> SimpleGraph:
        return cls(n, sp.csr_matrix((n, n), dtype=np.int8))

    @classmethod
    def complete(cls, n: int) -> SimpleGraph:
        rows, cols = np.triu_indices(n, k=1)
        return cls.from_arrays(n, rows, cols)

    @property
    def num_edges(self) -> int:
        return int(self.adjacency.nnz // 2)

    def degrees(self) -> np.ndarray:
        return np.diff(self.adjacency.indptr)

    def neighbors(self, i: int) -> np.ndarray:
        start, stop = self.adjacency.indptr[i], self.adjacency.indptr[i + 1]
        return self.adjacency.indices[start:stop]

    def edges(self) -> np.ndarray:
        """Edge list as an (m, 2) array with i < j, sorted."""
        upper = sp.triu(self.adjacency, k=1).tocoo()
        order = np.lexsort((upper.col, upper.row))
        return np.column_stack([upper.row[order], upper.col[order]]).astype(np.int64)

    def relabel(self, pi: Permutation) -> SimpleGraph:
        """Move node i to pi(i)."""
        if pi.n != self.n:
            raise ArgumentError("permutation size does not match graph")
        edges = self.edges()
        return SimpleGraph.from_arrays(
            self.n, pi.mapping[edges[:, 0]], pi.mapping[edges[:, 1]]
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimpleGraph)
            and other.n == self.n
            and (self.adjacency != other.adjacency).nnz == 0
        )


@dataclass(frozen=True)
class AttributeDatabase:
    rows: np.ndarray

    def __post_init__(self):
        rows = np.array(self.rows, dtype=np.float64)
        if rows.ndim == 1:
            rows = rows.reshape(-1, 1) if rows.size else rows.reshape(0, 0)
        if rows.ndim != 2:
            raise ArgumentError("attribute rows must form an n x d matrix")
        if not np.all(np.isfinite(rows)):
            raise ArgumentError("attribute rows must be finite")
        object.__setattr__(self, "rows", _frozen(rows))

    @classmethod
    def empty(cls, n: int) -> AttributeDatabase:
        return cls(np.zeros((n, 0)))

    @property
    def n(self) -> int:
        return int(self.rows.shape[0])

    @property
    def d(self) -> int:
        return int(self.rows.shape[1])

    def take(self, index: np.ndarray) -> AttributeDatabase:
        return AttributeDatabase(self.rows[np.asarray(index, dtype=np.int64)])

    def __eq__(self, other) -> bool:
        return isinstance(other, AttributeDatabase) and np.array_equal(
            self.rows, other.rows
        )


@dataclass(frozen=True)
class PartialMatching:
    """Injective map from ``domain`` (sorted) onto ``image``."""

    domain: np.ndarray
    image: np.ndarray
    n: int

    def __post_init__(self):
        domain = np.array(self.domain, dtype=np.int64).ravel()
        image = np.array(self.image, dtype=np.int64).ravel()
        if domain.size != image.size:
            raise ArgumentError("domain and image sizes differ")
        for name, values in (("domain", domain), ("image", image)):
            if values.size and (values.min() < 0 or values.max() >= self.n):
                raise ArgumentError(f"{name} out of range for n={self.n}")
            if np.unique(values).size != values.size:
                raise ArgumentError(f"{name} has repeated nodes")
        order = np.argsort(domain, kind="stable")
        object.__setattr__(self, "domain", _frozen(domain[order]))
        object.__setattr__(self, "image", _frozen(image[order]))

    @classmethod
    def empty(cls, n: int) -> PartialMatching:
        return cls(np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64), n)

    @classmethod
    def restrict(cls, pi: Permutation, nodes: Iterable[int]) -> PartialMatching:
        nodes = np.fromiter(nodes, dtype=np.int64)
        return cls(nodes, pi.mapping[nodes], pi.n)

    @property
    def size(self) -> int:
        return int(self.domain.size)

    def __len__(self) -> int:
        return self.size

    def to_array(self) -> np.ndarray:
        """Length-n image array with -1 for unmatched nodes."""
        out = np.full(self.n, -1, dtype=np.int64)
        out[self.domain] = self.image
        return out

    def is_total(self) -> bool:
        return self.size == self.n

    def to_permutation(self) -> Permutation:
        if not self.is_total():
            raise ArgumentError("matching does not cover every node")
        return Permutation(self.to_array())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PartialMatching)
            and other.n == self.n
            and np.array_equal(self.domain, other.domain)
            and np.array_equal(self.image, other.image)
        )


@dataclass(frozen=True)
class CorrelatedInstance:
    db1: AttributeDatabase
    db2: AttributeDatabase
    truth_perm: Permutation
    labels1: LabelVector
    mu: np.ndarray
    params: ModelParams
    graph1: Optional[SimpleGraph] = None
    graph2: Optional[SimpleGraph] = None

    def __post_init__(self):
        n = self.truth_perm.n
        if self.db1.d != self.db2.d:
            raise ArgumentError("databases disagree on dimension")
        if not (self.db1.n == self.db2.n == self.labels1.n == n):
            raise ArgumentError("instance components disagree on n")
        if (self.graph1 is None) != (self.graph2 is None):
            raise ArgumentError("graphs must be both present or both absent")
        if self.graph1 is not None and not (self.graph1.n == self.graph2.n == n):
            raise ArgumentError("graph sizes disagree with n")
        object.__setattr__(
            self, "mu", _frozen(np.array(self.mu, dtype=np.float64).ravel())
        )

    @property
    def n(self) -> int:
        return self.truth_perm.n

    @property
    def d(self) -> int:
        return self.db1.d

    @property
    def has_graphs(self) -> bool:
        return self.graph1 is not None

    @property
    def labels2(self) -> LabelVector:
        """Labels of the second copy, labels1 after the inverse truth permutation."""
        return LabelVector(self.labels1.labels[self.truth_perm.inverse().mapping])
