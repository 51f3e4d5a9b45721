"""Sweep outputs: a per-trial CSV, a JSON summary and an SVG overlay.

CSV columns are fixed by :data:`CSV_COLUMNS`; empty cells mean "not run" or
"not applicable". Wall time is kept out of the CSV so that identical seeds
produce identical bytes; it is reported in the JSON summary instead.
"""

from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Union

import numpy as np
from matplotlib.colors import ListedColormap
from matplotlib.figure import Figure

from ..core.exceptions import ArgumentError
from ..schemas.experiment import CellSummary, SweepSummary, TrialRecord
from ..schemas.phase import ClassifierId
from ..theory.phase import PALETTE, cell_label

logger = logging.getLogger(__name__)

PARAM_COLUMNS = ["n", "d", "rho", "R", "p", "q", "s", "a", "b"]
CSV_COLUMNS = (
    ["cell_id", "trial", "master", "stream"]
    + PARAM_COLUMNS
    + [
        "failed",
        "error",
        "matched_exactly",
        "match_overlap",
        "unmatched",
        "k",
        "oracle_agrees",
        "recovery_agreement",
        "recovered_exactly",
        "single_agreement",
        "single_recovered_exactly",
        "matching_label",
        "recovery_single_label",
        "recovery_pair_label",
    ]
)


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def csv_row(record: TrialRecord) -> dict:
    row = record.model_dump(exclude={"params", "region", "wall_time"})
    row.update({key: record.params.get(key) for key in PARAM_COLUMNS})
    region = record.region
    row["matching_label"] = region.matching.value if region else None
    row["recovery_single_label"] = region.recovery_single.value if region else None
    row["recovery_pair_label"] = region.recovery_pair.value if region else None
    return {key: _format(row.get(key)) for key in CSV_COLUMNS}


def emit_csv(records: Iterable[TrialRecord], path: Union[str, Path]) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow(csv_row(record))
    logger.info("wrote %s", path)
    return path


def emit_summary_json(summary: SweepSummary, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(summary.model_dump_json(indent=2))
    logger.info("wrote %s", path)
    return path


def _empirical_rate(cell: CellSummary) -> Optional[float]:
    for rate in (cell.recovery_pair, cell.matching, cell.recovery_single):
        if rate is not None:
            return rate.rate
    return None


def emit_phase_svg(summary: SweepSummary, path: Union[str, Path]) -> Path:
    """Theory labels as background, empirical success rates as annotated markers.

    The grid must vary at most two parameters.
    """
    grid = summary.config.grid
    varying: List[str] = [key for key, values in grid.items() if len(values) > 1]
    if len(varying) > 2:
        raise ArgumentError(f"cannot draw a grid varying {len(varying)} parameters")
    x_name = varying[0] if varying else next(iter(grid))
    y_name = varying[1] if len(varying) == 2 else None
    xs = sorted(set(grid[x_name]))
    ys = sorted(set(grid[y_name])) if y_name else [0.0]

    recovery = any(method.value.startswith("recover") for method in summary.config.methods)
    model = summary.config.model
    if recovery:
        classifier = ClassifierId.cgmm_recover if model == "cgmm" else ClassifierId.ccsbm_recover
    else:
        classifier = ClassifierId.cgmm_match if model == "cgmm" else ClassifierId.ccsbm_match

    names = list(PALETTE)
    codes = np.full((len(ys), len(xs)), names.index("invalid"))
    rates = np.full((len(ys), len(xs)), np.nan)
    for cell in summary.cells:
        i = ys.index(cell.params[y_name]) if y_name else 0
        j = xs.index(cell.params[x_name])
        if cell.region is not None:
            codes[i, j] = names.index(cell_label(classifier, cell.region))
        rate = _empirical_rate(cell)
        if rate is not None:
            rates[i, j] = rate

    fig = Figure(figsize=(7, 5))
    ax = fig.subplots()
    ax.pcolormesh(
        xs,
        ys,
        codes,
        cmap=ListedColormap([PALETTE[name] for name in names]),
        vmin=-0.5,
        vmax=len(names) - 0.5,
        shading="nearest",
        alpha=0.6,
    )
    grid_x, grid_y = np.meshgrid(xs, ys)
    mask = ~np.isnan(rates)
    points = ax.scatter(
        grid_x[mask], grid_y[mask], c=rates[mask], cmap="viridis", vmin=0.0, vmax=1.0, edgecolors="black"
    )
    for x, y, rate in zip(grid_x[mask], grid_y[mask], rates[mask]):
        ax.annotate(f"{rate:.2f}", (x, y), textcoords="offset points", xytext=(0, 7), ha="center", fontsize=7)
    fig.colorbar(points, ax=ax, label="empirical success rate")
    ax.set_xlabel(x_name)
    ax.set_ylabel(y_name or "")
    ax.set_title(f"{summary.config.name} ({classifier.value})")
    path = Path(path)
    fig.savefig(path, format="svg", bbox_inches="tight")
    logger.info("wrote %s", path)
    return path


def emit_all(summary: SweepSummary, records: List[TrialRecord], directory: Union[str, Path]) -> List[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = [
        emit_csv(records, directory / "trials.csv"),
        emit_summary_json(summary, directory / "summary.json"),
    ]
    try:
        paths.append(emit_phase_svg(summary, directory / "phase.svg"))
    except ArgumentError as exc:
        logger.warning("skipping phase.svg: %s", exc)
    return paths
