"""Command line entry point: ``corrnet generate|match|recover|phase|sweep``."""

import functools
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Optional

import numpy as np
import typer
import yaml
from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.markup import escape

from ..core.exceptions import ArgumentError, CapacityError, CorrnetError
from ..core.logging import configure_logging
from ..core.operations import overlap
from ..core.serialization import (
    load_instance,
    load_manifest,
    save_instance,
    write_labels,
    write_permutation,
)
from ..core.structures import CorrelatedInstance
from ..harness.emit import emit_all
from ..harness.sweep import run_sweep
from ..matching.assignment import MatchResult, min_distance_match
from ..matching.two_step import kcore_match, two_step_match
from ..models.samplers import sample_instance
from ..oracle.brute_force import brute_force_kcore_estimator, brute_force_min_distance
from ..recovery.pipeline import recover_pipeline
from ..schemas.experiment import ExperimentConfig
from ..schemas.params import CcsbmParams, CgmmParams, Seed
from ..schemas.phase import ClassifierId, GridSpec
from ..schemas.reports import MatchMode, MatchReport, RecoveryReportSchema
from ..theory.classifiers import classify_region
from ..theory.phase import phase_grid, render_svg, write_csv

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="corrnet",
    help="Correlated attributed random networks: sample, match, recover and map thresholds.",
    no_args_is_help=True,
)
console = Console(stderr=True)


class ModelName(str, Enum):
    cgmm = "cgmm"
    ccsbm = "ccsbm"


class MatchMethod(str, Enum):
    min_distance = "min-distance"
    kcore = "kcore"
    two_step = "two-step"


class KcoreMode(str, Enum):
    oracle = "oracle"
    exact = "exact"


class Switch(str, Enum):
    true = "true"
    false = "false"


def handle_errors(command):
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (CorrnetError, ValidationError) as exc:
            console.print(f"[bold red]error:[/bold red] {escape(str(exc))}")
            raise typer.Exit(code=2)

    return wrapper


def load_config(path: Path) -> dict:
    """Read a JSON or YAML mapping."""
    try:
        data = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ArgumentError(f"{path}: not valid JSON or YAML") from exc
    if not isinstance(data, dict):
        raise ArgumentError(f"{path}: expected a mapping at the top level")
    return data


def params_from_config(model: ModelName, data: dict):
    data = {**data}
    if data.setdefault("model", model.value) != model.value:
        raise ArgumentError(f"config is for model {data['model']!r}, not {model.value!r}")
    if model == ModelName.cgmm:
        return CgmmParams(**data)
    if "a" in data or "b" in data:
        return CcsbmParams.from_rates(data.pop("n"), data.pop("a"), data.pop("b"), **data)
    return CcsbmParams(**data)


def parse_k(value: str) -> Optional[int]:
    if value == "auto":
        return None
    try:
        k = int(value)
    except ValueError as exc:
        raise ArgumentError(f"--k must be an integer or 'auto', got {value!r}") from exc
    if k < 0:
        raise ArgumentError("--k must be non-negative")
    return k


def emit(model: BaseModel, path: Optional[Path]) -> None:
    text = model.model_dump_json(indent=2)
    if path is None:
        typer.echo(text)
    else:
        path.write_text(text + "\n")
        console.print(f"wrote {path}")


def oracle_agrees(inst: CorrelatedInstance, method: MatchMethod, result: MatchResult) -> Optional[bool]:
    try:
        if method == MatchMethod.min_distance:
            _, cost = brute_force_min_distance(inst.db1, inst.db2)
            return abs(cost - result.total_cost) <= 1e-9 * max(1.0, abs(cost))
        if method == MatchMethod.kcore:
            return brute_force_kcore_estimator(inst.graph1, inst.graph2, result.k) == result.matching
    except CapacityError as exc:
        logger.warning("oracle skipped: %s", exc)
        return None
    logger.warning("no oracle for %s matching", method.value)
    return None


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Overrides CORRNET_LOG_LEVEL."),
):
    configure_logging(log_level)


@app.command()
@handle_errors
def generate(
    model: ModelName = typer.Option(..., "--model", help="Model to sample."),
    params: Path = typer.Option(..., "--params", exists=True, dir_okay=False, help="JSON or YAML parameters."),
    seed: int = typer.Option(..., "--seed", min=0, help="Master seed."),
    stream: int = typer.Option(0, "--stream", min=0, help="Stream under the master seed."),
    out: Path = typer.Option(..., "--out", file_okay=False, help="Instance directory."),
):
    """Sample a correlated instance and write it with its manifest."""
    model_params = params_from_config(model, load_config(params))
    seed_value = Seed(master=seed, stream=stream)
    inst = sample_instance(model_params, seed_value)
    save_instance(inst, out, seed_value)
    console.print(f"wrote {model.value} instance n={inst.n} d={inst.d} to {out}")


@app.command()
@handle_errors
def match(
    input_dir: Path = typer.Option(..., "--in", exists=True, file_okay=False, help="Instance directory."),
    method: MatchMethod = typer.Option(MatchMethod.min_distance, "--method"),
    k: str = typer.Option("auto", "--k", help="Core order, or 'auto'."),
    mode: KcoreMode = typer.Option(KcoreMode.oracle, "--mode", help="k-core step: oracle or exact."),
    out: Optional[Path] = typer.Option(None, "--out", help="Permutation line file."),
    report: Optional[Path] = typer.Option(None, "--report", help="JSON report; stdout when omitted."),
    oracle: bool = typer.Option(False, "--oracle", help="Cross-check against brute force."),
):
    """Estimate the node correspondence between the two copies."""
    inst = load_instance(input_dir)
    k_value = parse_k(k)
    step_mode = MatchMode.kcore_oracle if mode == KcoreMode.oracle else MatchMode.kcore_exact
    if method == MatchMethod.min_distance:
        if inst.d == 0:
            raise ArgumentError("min-distance matching needs attributes")
        result = min_distance_match(inst.db1, inst.db2)
    elif method == MatchMethod.kcore:
        result = kcore_match(inst, step_mode, k_value)
    else:
        result = two_step_match(inst, step_mode, k_value)

    estimate = result.matching.to_array() if not result.is_total else result.permutation().mapping
    matched = estimate >= 0
    truth = inst.truth_perm.mapping
    if out is not None:
        write_permutation(result.matching, out)
        console.print(f"wrote {out}")
    emit(
        MatchReport(
            mode=result.mode,
            total_cost=result.total_cost,
            matched=int(np.count_nonzero(matched)),
            unmatched=result.unmatched,
            k=result.k,
            overlap=overlap(estimate, truth),
            success=bool(np.array_equal(estimate[matched], truth[matched])),
            oracle_agrees=oracle_agrees(inst, method, result) if oracle else None,
        ),
        report,
    )


@app.command()
@handle_errors
def recover(
    input_dir: Path = typer.Option(..., "--in", exists=True, file_okay=False, help="Instance directory."),
    use_pair: Switch = typer.Option(
        Switch.true, "--use-pair", case_sensitive=False, help="Match and merge both copies."
    ),
    match_method: Optional[MatchMode] = typer.Option(
        None, "--match-method", help="Matcher for the pair; model default when omitted."
    ),
    k: str = typer.Option("auto", "--k", help="Core order, or 'auto'."),
    estimate: bool = typer.Option(False, "--estimate-params", help="Plug-in estimates instead of known parameters."),
    out: Optional[Path] = typer.Option(None, "--out", help="Label line file."),
    report: Optional[Path] = typer.Option(None, "--report", help="JSON report; stdout when omitted."),
):
    """Recover the communities of the first copy."""
    inst = load_instance(input_dir)
    manifest = load_manifest(input_dir)
    result = recover_pipeline(
        inst,
        match_mode=match_method,
        use_pair=use_pair == Switch.true,
        seed=manifest.seed,
        k=parse_k(k),
        known_params=not estimate,
    )
    if out is not None:
        write_labels(result.labels_hat, out)
        console.print(f"wrote {out}")
    emit(
        RecoveryReportSchema(
            method=result.method,
            agreement=result.agreement,
            exact=result.exact,
            iterations=result.iterations,
            matched_exactly=result.matched_exactly,
            match_overlap=result.match_overlap,
            region=classify_region(inst.params),
        ),
        report,
    )


@app.command()
@handle_errors
def phase(
    classifier: ClassifierId = typer.Option(..., "--classifier"),
    grid: Path = typer.Option(..., "--grid", exists=True, dir_okay=False, help="JSON or YAML grid spec."),
    out: Path = typer.Option(..., "--out", help="CSV of cell labels."),
    svg: Optional[Path] = typer.Option(None, "--svg", help="Colour map of the labels."),
):
    """Label a parameter grid with a threshold classifier."""
    spec = GridSpec(**load_config(grid))
    table = phase_grid(spec, classifier)
    write_csv(table, out)
    console.print(f"wrote {out}")
    if svg is not None:
        render_svg(table, spec, svg)
        console.print(f"wrote {svg}")


@app.command()
@handle_errors
def sweep(
    config: Optional[Path] = typer.Option(None, "--config", exists=True, dir_okay=False, help="Experiment config."),
    jobs: Optional[int] = typer.Option(None, "--jobs", min=1, help="Worker processes; CORRNET_JOBS by default."),
    out: Optional[Path] = typer.Option(None, "--out", help="Output directory; overrides the config."),
    schema: bool = typer.Option(False, "--schema", help="Print the config JSON schema and exit."),
    progress: bool = typer.Option(True, "--progress/--quiet"),
):
    """Run a seeded Monte Carlo sweep and write CSV, JSON and SVG outputs."""
    if schema:
        typer.echo(json.dumps(ExperimentConfig.model_json_schema(), indent=2))
        return
    if config is None:
        raise ArgumentError("--config is required")
    experiment = ExperimentConfig(**load_config(config))
    directory = out or (Path(experiment.out) if experiment.out else None)
    if directory is None:
        raise ArgumentError("no output directory: pass --out or set 'out' in the config")
    result = run_sweep(experiment, jobs=jobs, show_progress=progress)
    for path in emit_all(result.summary, result.records, directory):
        console.print(f"wrote {path}")
    if result.summary.failed_cells:
        console.print(
            f"[bold red]{len(result.summary.failed_cells)} cell(s) failed in every trial[/bold red]"
        )
        raise typer.Exit(code=1)
