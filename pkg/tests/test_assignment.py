import itertools

import numpy as np
import pytest

from app.core.exceptions import ArgumentError
from app.core.structures import AttributeDatabase, Permutation
from app.matching.assignment import cost_matrix, min_distance_match, solve_assignment
from app.models.samplers import sample_instance
from app.oracle.brute_force import brute_force_min_distance, naive_costs
from app.schemas.params import CgmmParams, Seed
from app.schemas.reports import MatchMode


def test_cost_matrix_matches_naive(rng):
    X = AttributeDatabase(rng.standard_normal((5, 3)))
    Y = AttributeDatabase(rng.standard_normal((5, 3)))
    assert np.allclose(cost_matrix(X, Y), naive_costs(X, Y))


def test_cost_matrix_without_attributes():
    assert not cost_matrix(AttributeDatabase.empty(3), AttributeDatabase.empty(3)).any()


def test_cost_matrix_dimension_mismatch():
    with pytest.raises(ArgumentError):
        cost_matrix(AttributeDatabase(np.zeros((2, 2))), AttributeDatabase(np.zeros((2, 3))))


def test_solve_assignment_small_example():
    Z = np.array([[4.0, 1.0, 3.0], [2.0, 0.0, 5.0], [3.0, 2.0, 2.0]])
    pi, cost = solve_assignment(Z)
    assert pi == Permutation([1, 0, 2])
    assert cost == 5.0


def test_solve_assignment_rejects_bad_matrices():
    with pytest.raises(ArgumentError):
        solve_assignment(np.zeros((2, 3)))
    with pytest.raises(ArgumentError):
        solve_assignment(np.array([[0.0, np.inf], [1.0, 0.0]]))


@pytest.mark.parametrize("seed", range(40))
def test_solve_assignment_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 7))
    X = AttributeDatabase(rng.standard_normal((n, 2)))
    Y = AttributeDatabase(rng.standard_normal((n, 2)))
    _, expected = brute_force_min_distance(X, Y)
    result = min_distance_match(X, Y)
    assert result.total_cost == pytest.approx(expected, rel=1e-12, abs=1e-12)
    assert result.mode == MatchMode.min_distance
    assert result.is_total


def test_min_distance_recovers_truth_with_strong_correlation(cgmm_instance):
    result = min_distance_match(cgmm_instance.db1, cgmm_instance.db2)
    assert result.permutation() == cgmm_instance.truth_perm


def test_min_distance_is_translation_invariant(cgmm_instance, rng):
    shift = 3.0 * rng.standard_normal(cgmm_instance.d)
    moved = min_distance_match(
        AttributeDatabase(cgmm_instance.db1.rows + shift), AttributeDatabase(cgmm_instance.db2.rows + shift)
    )
    assert moved.permutation() == min_distance_match(cgmm_instance.db1, cgmm_instance.db2).permutation()


def test_min_distance_without_attributes_is_identity():
    result = min_distance_match(AttributeDatabase.empty(4), AttributeDatabase.empty(4))
    assert result.permutation() == Permutation([0, 1, 2, 3])
    assert result.total_cost == 0.0


def test_min_distance_size_mismatch():
    with pytest.raises(ArgumentError):
        min_distance_match(AttributeDatabase(np.zeros((2, 1))), AttributeDatabase(np.zeros((3, 1))))


def test_min_distance_dimension_mismatch():
    with pytest.raises(ArgumentError):
        min_distance_match(AttributeDatabase.empty(3), AttributeDatabase(np.zeros((3, 1))))


@pytest.mark.slow
def test_assignment_oracle_equivalence_at_scale():
    rng = np.random.default_rng(500)
    for _ in range(500):
        n = int(rng.integers(1, 8))
        Z = rng.random((n, n))
        _, cost = solve_assignment(Z)
        best = min(Z[np.arange(n), list(p)].sum() for p in itertools.permutations(range(n)))
        assert cost == pytest.approx(best, rel=1e-12, abs=1e-12)
    for trial in range(500):
        n = int(rng.integers(2, 8))
        d = int(rng.integers(1, 5))
        inst = sample_instance(CgmmParams(n=n, d=d, rho=0.5, R=1.0), Seed(master=500, stream=trial))
        _, expected = brute_force_min_distance(inst.db1, inst.db2)
        assert min_distance_match(inst.db1, inst.db2).total_cost == pytest.approx(expected, rel=1e-12, abs=1e-12)
