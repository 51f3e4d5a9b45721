"""Parameter sweeps over a bounded worker pool."""

from __future__ import annotations

import logging
import math
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn, TimeElapsedColumn
from scipy.stats import norm

from ..core.settings import settings
from ..schemas.experiment import CellSummary, ExperimentConfig, RateSummary, SweepSummary, TrialRecord
from .trials import Cell, cells, run_trial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepResult:
    records: List[TrialRecord]
    summary: SweepSummary


def wilson_interval(successes: int, total: int, confidence: float = 0.95) -> Tuple[float, float]:
    if total == 0:
        return 0.0, 1.0
    z = float(norm.ppf(0.5 + confidence / 2.0))
    rate = successes / total
    denominator = 1.0 + z * z / total
    center = (rate + z * z / (2.0 * total)) / denominator
    half = z * math.sqrt(rate * (1.0 - rate) / total + z * z / (4.0 * total * total)) / denominator
    return max(0.0, center - half), min(1.0, center + half)


def _rate(flags: Iterable[Optional[bool]]) -> Optional[RateSummary]:
    flags = [flag for flag in flags if flag is not None]
    if not flags:
        return None
    successes = sum(1 for flag in flags if flag)
    return RateSummary(
        successes=successes,
        total=len(flags),
        rate=successes / len(flags),
        interval=wilson_interval(successes, len(flags)),
    )


def summarize_cell(cell: Cell, records: List[TrialRecord]) -> CellSummary:
    completed = [record for record in records if not record.failed]
    return CellSummary(
        cell_id=cell.cell_id,
        params=cell.values,
        trials=len(records),
        failed=len(records) - len(completed),
        matching=_rate(record.matched_exactly for record in completed),
        recovery_pair=_rate(record.recovered_exactly for record in completed),
        recovery_single=_rate(record.single_recovered_exactly for record in completed),
        region=next((record.region for record in records if record.region), None),
        mean_wall_time=sum(record.wall_time for record in records) / max(1, len(records)),
    )


def _run_task(task: Tuple[Cell, int, ExperimentConfig]) -> TrialRecord:
    cell, trial, config = task
    return run_trial(cell, trial, config)


def run_sweep(
    config: ExperimentConfig, jobs: Optional[int] = None, show_progress: bool = False
) -> SweepResult:
    """Run every trial of every cell; records come back in (cell, trial) order."""
    jobs = settings.jobs if jobs is None else jobs
    grid = cells(config)
    tasks = [(cell, trial, config) for cell in grid for trial in range(config.trials)]
    logger.info(
        "sweep %s: %d cells x %d trials on %d worker(s)", config.name, len(grid), config.trials, jobs
    )
    started = time.perf_counter()
    records: List[TrialRecord] = []
    with Progress(
        TextColumn("[bold blue]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        disable=not show_progress,
    ) as progress:
        bar = progress.add_task(config.name, total=len(tasks))
        if jobs <= 1:
            for task in tasks:
                records.append(_run_task(task))
                progress.advance(bar)
        else:
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                for record in executor.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))):
                    records.append(record)
                    progress.advance(bar)

    by_cell = defaultdict(list)
    for record in records:
        by_cell[record.cell_id].append(record)
    summaries = [summarize_cell(cell, by_cell[cell.cell_id]) for cell in grid]
    failed_cells = [summary.cell_id for summary in summaries if summary.failed == summary.trials]
    for cell_id in failed_cells:
        logger.error("every trial of cell %s failed", cell_id)
    summary = SweepSummary(
        config=config,
        cells=summaries,
        failed_cells=failed_cells,
        wall_time=time.perf_counter() - started,
    )
    return SweepResult(records=records, summary=summary)
