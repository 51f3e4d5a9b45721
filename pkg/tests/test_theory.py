import math

import numpy as np
import pytest

from app.core.exceptions import ArgumentError
from app.schemas.params import CcsbmParams, CgmmParams
from app.schemas.phase import AxisSpec, ClassifierId, GridSpec
from app.schemas.reports import MatchingLabel, RecoveryLabel
from app.theory.classifiers import (
    attribute_information,
    classify_matching,
    classify_matching_ccsbm,
    classify_matching_cgmm,
    classify_matching_sbm,
    classify_recovery,
    classify_region,
    condition_flags,
    gmm_recovery_threshold,
    recovery_values,
)
from app.theory.functions import fn_I, fn_I_star, fn_I_t, fn_S, rate_params, snr_c, snr_cprime
from app.theory.phase import PALETTE, build_params, phase_grid, render_svg, write_csv

ALPHAS = [0.05, 0.1, 0.3, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 100.0]


@pytest.mark.parametrize("alpha", ALPHAS)
def test_s_with_two_terms(alpha):
    assert fn_S(alpha, 2) == pytest.approx(math.log(1 + 1 / alpha), abs=1e-12)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_cycle_bounds(alpha):
    for t in range(3, 51):
        # the upper gap shrinks geometrically in t and vanishes below rounding for large alpha
        assert fn_S(alpha, t) <= t * fn_I(alpha) * (1 + 1e-12)
        assert fn_S(alpha, t) > fn_S(alpha, 2) + (t - 2) * fn_I(alpha)


@pytest.mark.parametrize("alpha", [0.05, 0.1, 0.3, 0.5, 1.0])
def test_cycle_upper_bound_is_strict(alpha):
    for t in range(2, 11):
        assert fn_S(alpha, t) < t * fn_I(alpha)


def test_rate_function_arguments():
    with pytest.raises(ArgumentError):
        fn_S(0.0, 3)
    with pytest.raises(ArgumentError):
        fn_S(1.0, 1)
    with pytest.raises(ArgumentError):
        fn_I(-1.0)
    with pytest.raises(ArgumentError):
        fn_I_t(0.5, 0.0, 1.0, 0.0)


def test_i_star_is_the_value_at_minus_one_half():
    rng = np.random.default_rng(0)
    for a, b, c in rng.uniform(0.1, 20.0, size=(1000, 3)):
        assert fn_I_star(a, b, c) == pytest.approx(fn_I_t(-0.5, a, b, c), abs=1e-12)


def test_i_star_is_the_supremum_on_a_grid():
    grid = np.linspace(-1.0, 0.0, 1001)
    values = [fn_I_t(t, 3.0, 1.0, 0.5) for t in grid]
    assert max(values) <= fn_I_star(3.0, 1.0, 0.5) + 1e-12
    assert grid[int(np.argmax(values))] == pytest.approx(-0.5, abs=1e-3)


def test_snr():
    assert snr_c(0.0, 10, 100) == 0.0
    assert snr_c(4.0, 100, 100) == pytest.approx(16.0 / 5.0 / math.log(100))
    assert snr_cprime(4.0, 100, 100, 1.0) == pytest.approx(snr_c(4.0, 100, 100))
    with pytest.raises(ArgumentError):
        snr_cprime(4.0, 100, 100, 1.5)


def test_rate_params():
    params = CcsbmParams.from_rates(n=1000, a=12.0, b=3.0, s=0.5, R=9.14, d=100, rho=0.5)
    rates = rate_params(params)
    assert rates.a == pytest.approx(12.0)
    assert rates.b == pytest.approx(3.0)
    assert rates.c_prime == pytest.approx(snr_c(2 * 9.14 / 1.5, 100, 1000))


def test_attribute_information():
    assert attribute_information(0, 0.5) == 0.0
    assert attribute_information(10, 0.0) == 0.0
    assert attribute_information(10, 1.0) == math.inf
    assert attribute_information(8, 0.6) == pytest.approx(2 * math.log(1 / 0.64))


def test_cgmm_matching_labels():
    low = dict(n=500, d=10)
    assert classify_matching_cgmm(CgmmParams(**low, rho=0.0, R=1.0)) == MatchingLabel.impossible
    assert classify_matching_cgmm(CgmmParams(**low, rho=0.5, R=1.0)) == MatchingLabel.impossible
    assert classify_matching_cgmm(CgmmParams(**low, rho=0.999, R=1.0)) == MatchingLabel.gap
    assert classify_matching_cgmm(CgmmParams(**low, rho=0.999, R=20.0)) == MatchingLabel.achievable
    assert classify_matching_cgmm(CgmmParams(**low, rho=1.0, R=1.0)) == MatchingLabel.achievable


def test_low_dimension_flag_gates_impossibility():
    low = CgmmParams(n=10_000, d=20, rho=0.3, R=1.0)
    assert condition_flags(low)["low_dim"]
    assert classify_matching_cgmm(low) == MatchingLabel.impossible
    high = CgmmParams(n=10_000, d=40, rho=0.05, R=1.0)
    assert not condition_flags(high)["low_dim"]
    assert condition_flags(high)["high_dim"]
    assert classify_matching_cgmm(high) == MatchingLabel.gap


def test_cgmm_matching_high_dimension():
    n = 500
    base = dict(n=n, d=400, R=math.log(n))
    assert classify_matching_cgmm(CgmmParams(**base, rho=0.4)) == MatchingLabel.achievable
    assert classify_matching_cgmm(CgmmParams(**base, rho=0.12)) == MatchingLabel.gap


def test_sbm_matching_labels():
    assert classify_matching_sbm(1000, 0.02, 0.01, 1.0) == MatchingLabel.achievable
    assert classify_matching_sbm(1000, 0.004, 0.002, 1.0) == MatchingLabel.impossible
    assert classify_matching_sbm(1000, 0.0092, 0.0046, 1.0) == MatchingLabel.gap


@pytest.mark.parametrize("a,b,s", [(4.0, 2.0, 0.8), (20.0, 4.0, 0.9), (3.0, 1.0, 0.3), (8.0, 6.0, 0.6)])
def test_ccsbm_reduces_to_sbm_without_attributes(a, b, s):
    params = CcsbmParams.from_rates(n=1000, a=a, b=b, s=s, R=1.0, d=0, rho=0.5)
    assert classify_matching_ccsbm(params) == classify_matching_sbm(1000, params.p, params.q, s)


@pytest.mark.parametrize("d,rho,R", [(10, 0.5, 1.0), (10, 0.999, 20.0), (400, 0.12, 6.2), (400, 0.4, 6.2)])
def test_ccsbm_reduces_to_cgmm_without_edges(d, rho, R):
    params = CcsbmParams(n=500, p=0.0, q=0.0, s=0.5, R=R, d=d, rho=rho, allow_equal=True)
    assert classify_matching_ccsbm(params) == classify_matching_cgmm(CgmmParams(n=500, d=d, rho=rho, R=R))


@pytest.mark.parametrize("d", [5, 50, 400])
def test_matching_never_regresses_as_correlation_grows(d):
    labels = [classify_matching(CgmmParams(n=500, d=d, rho=rho, R=3.0)) for rho in np.linspace(0.0, 1.0, 101)]
    first = labels.index(MatchingLabel.achievable) if MatchingLabel.achievable in labels else len(labels)
    assert MatchingLabel.impossible not in labels[first:]


def test_gmm_recovery_gain_region():
    n, d = 1000, 1000
    params = CgmmParams(n=n, d=d, rho=0.2, R=12.0)
    threshold = (1 + math.sqrt(1 + 2 * d / (n * math.log(n)))) * math.log(n)
    assert gmm_recovery_threshold(n, d) == pytest.approx(threshold)
    assert classify_recovery(params, pair=False) == RecoveryLabel.impossible
    assert classify_recovery(params, pair=True) == RecoveryLabel.possible


def test_pair_recovery_needs_matching():
    # strong mean, no correlation: recovery is easy but the copies cannot be aligned
    params = CgmmParams(n=1000, d=1000, rho=0.0, R=40.0)
    assert classify_recovery(params, pair=False) == RecoveryLabel.possible
    assert classify_recovery(params, pair=True) == RecoveryLabel.gap


def test_ccsbm_recovery_values():
    params = CcsbmParams.from_rates(n=1000, a=12.0, b=3.0, s=0.5, R=9.14, d=100, rho=0.5)
    single, pair = recovery_values(params)
    c = snr_c(9.14, 100, 1000)
    c_prime = snr_cprime(9.14, 100, 1000, 0.5)
    assert single == pytest.approx(fn_I_star(6.0, 1.5, c))
    assert pair == pytest.approx(fn_I_star(9.0, 2.25, c_prime))
    assert pair == pytest.approx(2.0, abs=0.05)


def test_ccsbm_recovery_without_attributes():
    params = CcsbmParams.from_rates(n=1000, a=12.0, b=3.0, s=0.5, R=9.14, d=0, rho=0.5)
    single, pair = recovery_values(params)
    assert single == pytest.approx(fn_I_star(6.0, 1.5, 0.0))
    assert pair == pytest.approx(fn_I_star(9.0, 2.25, 0.0))


def test_region_flags_and_eps():
    params = CcsbmParams.from_rates(n=1000, a=12.0, b=3.0, s=0.5, R=9.14, d=100, rho=0.5)
    region = classify_region(params, eps=0.1)
    assert set(region.flags) == {"high_dim", "low_dim", "mu_strong", "strong_correlation", "sparse", "sparse_intersection", "edge_dominant"}
    assert set(condition_flags(CgmmParams(n=10, d=2, rho=0.1, R=1.0))) == {"high_dim", "low_dim", "mu_strong", "strong_correlation"}
    with pytest.raises(ArgumentError):
        classify_region(params, eps=0.0)
    with pytest.raises(ArgumentError):
        classify_region(params, eps=1.0)


def test_build_params_rounds_sizes_and_reads_rates():
    cgmm = build_params(ClassifierId.cgmm_match, {"n": 100.4, "d": 9.6, "rho": 0.5, "R": 2.0})
    assert (cgmm.n, cgmm.d) == (100, 10)
    ccsbm = build_params(ClassifierId.ccsbm_match, {"n": 100, "a": 4.0, "b": 2.0, "s": 0.5, "R": 1.0, "d": 0, "rho": 0.0})
    assert ccsbm.p == pytest.approx(4 * math.log(100) / 100)


def recovery_grid():
    return GridSpec(
        base={"n": 1000, "d": 1000},
        x=AxisSpec(name="rho", start=0.0, stop=1.0, num=6),
        y=AxisSpec(name="R", start=2.0, stop=40.0, num=5),
    )


def test_phase_grid_shape_and_labels():
    table = phase_grid(recovery_grid(), "cgmm-recover")
    assert len(table.cells) == 30
    assert (table.cells[0].x, table.cells[1].x) == (0.0, 0.2)
    assert {cell.label for cell in table.cells} <= set(PALETTE)
    assert table.x_name == "rho"


def test_phase_grid_marks_invalid_cells():
    grid = GridSpec(
        base={"n": 500, "R": 5.0},
        x=AxisSpec(name="d", start=0.0, stop=10.0, num=3),
        y=AxisSpec(name="rho", start=0.1, stop=0.9, num=3),
    )
    table = phase_grid(grid, ClassifierId.cgmm_match)
    assert [cell.label for cell in table.cells if cell.x == 0.0] == ["invalid"] * 3
    assert all(cell.region is None for cell in table.cells if cell.label == "invalid")


def test_phase_grid_with_rates():
    grid = GridSpec(
        base={"n": 1000, "b": 3.0, "R": 9.14, "d": 100, "rho": 0.5},
        x=AxisSpec(name="a", start=4.0, stop=12.0, num=3),
        y=AxisSpec(name="s", start=0.2, stop=1.0, num=3),
    )
    table = phase_grid(grid, ClassifierId.ccsbm_recover)
    assert len(table.cells) == 9
    assert "invalid" not in {cell.label for cell in table.cells}


def test_phase_grid_without_valid_cells():
    grid = GridSpec(
        base={"n": 500},
        x=AxisSpec(name="rho", start=0.1, stop=0.9, num=2),
        y=AxisSpec(name="d", start=1.0, stop=5.0, num=2),
    )
    with pytest.raises(ArgumentError):
        phase_grid(grid, ClassifierId.cgmm_match)


def test_phase_outputs(tmp_path):
    grid = recovery_grid()
    table = phase_grid(grid, ClassifierId.cgmm_recover)
    csv_path = write_csv(table, tmp_path / "phase.csv")
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "rho,R,label,matching,recovery_single,recovery_pair"
    assert len(lines) == 31
    svg_path = render_svg(table, grid, tmp_path / "phase.svg")
    assert "<svg" in svg_path.read_text()
