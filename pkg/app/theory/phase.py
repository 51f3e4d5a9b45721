"""Rectangular parameter grids labelled by the threshold classifiers."""

from __future__ import annotations

import csv
import logging
import math
from pathlib import Path
from typing import Dict, List, Union

import numpy as np
from matplotlib.colors import ListedColormap
from matplotlib.figure import Figure
from matplotlib.patches import Patch
from pydantic import ValidationError

from ..core.exceptions import ArgumentError, CorrnetError
from ..schemas.params import CcsbmParams, CgmmParams, ModelParams
from ..schemas.phase import AxisSpec, ClassifierId, GridSpec, PhaseCell, PhaseTable
from ..schemas.reports import RecoveryLabel, RegionLabel
from .classifiers import classify_region

logger = logging.getLogger(__name__)

INTEGER_FIELDS = ("n", "d")

# label -> colour, in legend order
PALETTE: Dict[str, str] = {
    "achievable": "#4f81bd",
    "single": "#9bbb59",
    "pair-only": "#e6a0c4",
    "gap": "#f2f2f2",
    "impossible": "#a6a6a6",
    "invalid": "#ffffff",
}


def axis_values(axis: AxisSpec) -> np.ndarray:
    if axis.scale == "log":
        return np.geomspace(axis.start, axis.stop, axis.num)
    return np.linspace(axis.start, axis.stop, axis.num)


def build_params(classifier: ClassifierId, values: Dict[str, float]) -> ModelParams:
    values = dict(values)
    for key in INTEGER_FIELDS:
        if key in values:
            values[key] = int(round(values[key]))
    if classifier in (ClassifierId.cgmm_match, ClassifierId.cgmm_recover):
        return CgmmParams(**values)
    if "a" in values or "b" in values:
        n = values["n"]
        scale = math.log(n) / n
        values["p"] = values.pop("a") * scale
        values["q"] = values.pop("b") * scale
    return CcsbmParams(**values)


def cell_label(classifier: ClassifierId, region: RegionLabel) -> str:
    if classifier in (ClassifierId.cgmm_match, ClassifierId.ccsbm_match):
        return region.matching.value
    if region.recovery_single == RecoveryLabel.possible:
        return "single"
    if region.recovery_pair == RecoveryLabel.possible:
        return "pair-only"
    if region.recovery_pair == RecoveryLabel.impossible:
        return "impossible"
    return "gap"


def phase_grid(grid: GridSpec, classifier: Union[ClassifierId, str]) -> PhaseTable:
    """Classify every cell of the grid, x varying fastest."""
    classifier = ClassifierId(classifier)
    cells: List[PhaseCell] = []
    invalid = 0
    for y in axis_values(grid.y):
        for x in axis_values(grid.x):
            values = {**grid.base, grid.x.name: float(x), grid.y.name: float(y)}
            try:
                params = build_params(classifier, values)
                region = classify_region(params, grid.eps, grid.C)
            except (ValidationError, CorrnetError, KeyError, TypeError):
                invalid += 1
                cells.append(PhaseCell(x=float(x), y=float(y), label="invalid"))
                continue
            cells.append(
                PhaseCell(
                    x=float(x),
                    y=float(y),
                    label=cell_label(classifier, region),
                    region=region,
                )
            )
    if invalid == len(cells):
        raise ArgumentError("no grid cell has valid parameters; check the base values")
    logger.info(
        "classified %d cells with %s (%d invalid)", len(cells), classifier.value, invalid
    )
    return PhaseTable(
        classifier=classifier, x_name=grid.x.name, y_name=grid.y.name, cells=cells
    )


def render_svg(table: PhaseTable, grid: GridSpec, path: Union[str, Path]) -> Path:
    """Colour map of the cell labels."""
    names = list(PALETTE)
    codes = np.array([names.index(cell.label) for cell in table.cells]).reshape(
        grid.y.num, grid.x.num
    )
    xs, ys = axis_values(grid.x), axis_values(grid.y)
    fig = Figure(figsize=(6, 5))
    ax = fig.subplots()
    ax.pcolormesh(
        xs,
        ys,
        codes,
        cmap=ListedColormap([PALETTE[name] for name in names]),
        vmin=-0.5,
        vmax=len(names) - 0.5,
        shading="nearest",
    )
    if grid.x.scale == "log":
        ax.set_xscale("log")
    if grid.y.scale == "log":
        ax.set_yscale("log")
    ax.set_xlabel(table.x_name)
    ax.set_ylabel(table.y_name)
    ax.set_title(table.classifier.value)
    present = sorted(set(codes.ravel().tolist()))
    ax.legend(
        handles=[Patch(facecolor=PALETTE[names[i]], edgecolor="black", label=names[i]) for i in present],
        loc="upper left",
        fontsize=8,
    )
    path = Path(path)
    fig.savefig(path, format="svg", bbox_inches="tight")
    return path


PHASE_COLUMNS = ["x", "y", "label", "matching", "recovery_single", "recovery_pair"]


def write_csv(table: PhaseTable, path: Union[str, Path]) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow([table.x_name, table.y_name] + PHASE_COLUMNS[2:])
        for cell in table.cells:
            region = cell.region
            labels = (
                [region.matching.value, region.recovery_single.value, region.recovery_pair.value]
                if region
                else ["", "", ""]
            )
            writer.writerow([repr(cell.x), repr(cell.y), cell.label] + labels)
    logger.info("wrote %s", path)
    return path
