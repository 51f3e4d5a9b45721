"""Text formats for instances.

Graphs are edge lists (an ``n`` header line, then one ``i j`` pair per line),
databases are CSV with one row per node, permutations and label vectors are a
single line of space-separated values. Indices in files are 0-based; ``-1``
marks an unmatched node of a partial matching.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional, Union

import numpy as np

from ..schemas.manifest import InstanceManifest
from ..schemas.params import Seed
from .exceptions import ArgumentError
from .structures import (
    AttributeDatabase,
    CorrelatedInstance,
    LabelVector,
    PartialMatching,
    Permutation,
    SimpleGraph,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

MANIFEST = "manifest.json"
FILES = {
    "db1": "db1.csv",
    "db2": "db2.csv",
    "truth": "truth.perm",
    "labels1": "labels1.txt",
    "graph1": "graph1.edges",
    "graph2": "graph2.edges",
}


def write_graph(graph: SimpleGraph, path: PathLike) -> None:
    lines = [str(graph.n)]
    lines.extend(f"{i} {j}" for i, j in graph.edges())
    Path(path).write_text("\n".join(lines) + "\n")


def read_graph(path: PathLike) -> SimpleGraph:
    lines = Path(path).read_text().split("\n")
    try:
        n = int(lines[0])
        edges = [tuple(int(v) for v in line.split()) for line in lines[1:] if line.strip()]
    except (ValueError, IndexError) as exc:
        raise ArgumentError(f"{path}: malformed edge list") from exc
    if any(len(edge) != 2 for edge in edges):
        raise ArgumentError(f"{path}: every edge line needs two endpoints")
    return SimpleGraph.from_edges(n, edges)


def write_database(db: AttributeDatabase, path: PathLike) -> None:
    with open(path, "w") as handle:
        handle.write(f"# n={db.n} d={db.d}\n")
        if db.d:
            np.savetxt(handle, db.rows, delimiter=",", fmt="%.17g")


def read_database(path: PathLike) -> AttributeDatabase:
    with open(path) as handle:
        header = handle.readline()
    try:
        fields = dict(item.split("=") for item in header.lstrip("#").split())
        n, d = int(fields["n"]), int(fields["d"])
    except (ValueError, KeyError) as exc:
        raise ArgumentError(f"{path}: missing '# n=.. d=..' header") from exc
    if d == 0:
        return AttributeDatabase.empty(n)
    rows = np.loadtxt(path, delimiter=",", ndmin=2, comments="#")
    if rows.shape != (n, d):
        raise ArgumentError(f"{path}: expected {n}x{d} rows, found {rows.shape}")
    return AttributeDatabase(rows)


def format_line(values) -> str:
    return " ".join(str(int(v)) for v in values)


def write_permutation(pi: Union[Permutation, PartialMatching], path: PathLike) -> None:
    values = pi.mapping if isinstance(pi, Permutation) else pi.to_array()
    Path(path).write_text(format_line(values) + "\n")


def read_permutation(path: PathLike) -> Permutation:
    return Permutation(_read_line(path))


def read_partial_matching(path: PathLike) -> PartialMatching:
    images = _read_line(path)
    matched = np.flatnonzero(images >= 0)
    return PartialMatching(matched, images[matched], images.size)


def write_labels(labels: LabelVector, path: PathLike) -> None:
    Path(path).write_text(format_line(labels.labels) + "\n")


def read_labels(path: PathLike) -> LabelVector:
    return LabelVector(_read_line(path))


def _read_line(path: PathLike) -> np.ndarray:
    try:
        return np.array([int(v) for v in Path(path).read_text().split()], dtype=np.int64)
    except ValueError as exc:
        raise ArgumentError(f"{path}: expected integers") from exc


def save_instance(
    inst: CorrelatedInstance, directory: PathLike, seed: Optional[Seed] = None
) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    files = {key: FILES[key] for key in ("db1", "db2", "truth", "labels1")}
    write_database(inst.db1, directory / files["db1"])
    write_database(inst.db2, directory / files["db2"])
    write_permutation(inst.truth_perm, directory / files["truth"])
    write_labels(inst.labels1, directory / files["labels1"])
    if inst.has_graphs:
        files["graph1"], files["graph2"] = FILES["graph1"], FILES["graph2"]
        write_graph(inst.graph1, directory / files["graph1"])
        write_graph(inst.graph2, directory / files["graph2"])
    manifest = InstanceManifest(
        params=inst.params,
        seed=seed,
        mu=inst.mu.tolist(),
        balance=inst.labels1.balance(),
        files=files,
    )
    (directory / MANIFEST).write_text(manifest.model_dump_json(indent=2))
    logger.info("wrote instance n=%d d=%d to %s", inst.n, inst.d, directory)
    return directory


def load_manifest(directory: PathLike) -> InstanceManifest:
    path = Path(directory) / MANIFEST
    if not path.exists():
        raise ArgumentError(f"no {MANIFEST} in {directory}")
    return InstanceManifest.model_validate_json(path.read_text())


def load_instance(directory: PathLike) -> CorrelatedInstance:
    directory = Path(directory)
    manifest = load_manifest(directory)
    files = manifest.files
    graphs = {}
    if "graph1" in files:
        graphs = {
            "graph1": read_graph(directory / files["graph1"]),
            "graph2": read_graph(directory / files["graph2"]),
        }
    return CorrelatedInstance(
        db1=read_database(directory / files["db1"]),
        db2=read_database(directory / files["db2"]),
        truth_perm=read_permutation(directory / files["truth"]),
        labels1=read_labels(directory / files["labels1"]),
        mu=np.asarray(manifest.mu),
        params=manifest.params,
        **graphs,
    )
