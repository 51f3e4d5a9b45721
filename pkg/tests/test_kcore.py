import math

import numpy as np
import pytest

from app.core.exceptions import ArgumentError, CapacityError
from app.core.operations import graph_intersection
from app.core.structures import Permutation, SimpleGraph
from app.matching.kcore import kcore_match_exact, kcore_match_oracle, select_k
from app.models.samplers import sample_instance
from app.oracle.brute_force import brute_force_kcore_estimator
from app.schemas.params import CcsbmParams, Seed


def correlated_pair(n, p, s, seed):
    """Two s-subsamples of one G(n, p), the second relabelled by a random permutation."""
    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(n, k=1)
    parent = rng.random(rows.size) < p
    keep1 = parent & (rng.random(rows.size) < s)
    keep2 = parent & (rng.random(rows.size) < s)
    pi = Permutation.random(n, rng)
    G1 = SimpleGraph.from_arrays(n, rows[keep1], cols[keep1])
    G2 = SimpleGraph.from_arrays(n, pi.mapping[rows[keep2]], pi.mapping[cols[keep2]])
    return G1, G2, pi


def test_select_k_sparse_branch():
    n = 1000
    expected = math.ceil(math.log(n) / math.log(math.log(n)) ** 2)
    assert select_k(n, 0.001, 1.0) == expected


def test_select_k_dense_branch():
    n, p, s = 1000, 0.5, 1.0
    x = n * p * s * s
    assert select_k(n, p, s) == math.ceil(x / math.log(x) ** 2)


def test_select_k_needs_three_nodes():
    with pytest.raises(ArgumentError):
        select_k(2, 0.5, 1.0)


def test_oracle_matching_is_truth_on_the_core(ccsbm_instance):
    k = 3
    matching = kcore_match_oracle(ccsbm_instance, k)
    truth = ccsbm_instance.truth_perm.mapping
    assert np.array_equal(matching.image, truth[matching.domain])
    intersection = graph_intersection(ccsbm_instance.graph1, ccsbm_instance.graph2, ccsbm_instance.truth_perm)
    core = intersection.adjacency[matching.domain][:, matching.domain]
    assert np.diff(core.indptr).min() >= k


def test_oracle_needs_graphs(cgmm_instance):
    with pytest.raises(ArgumentError):
        kcore_match_oracle(cgmm_instance, 1)


def test_exact_on_isomorphic_triangles(triangle):
    matching = kcore_match_exact(triangle, triangle, 2)
    assert matching.domain.tolist() == [0, 1, 2]
    assert matching.image.tolist() == [0, 1, 2]


def test_exact_without_a_core():
    path = SimpleGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert kcore_match_exact(path, path, 2).size == 0


def test_exact_finds_hidden_relabelling():
    G1 = SimpleGraph.from_edges(5, [(0, 1), (1, 2), (0, 2), (3, 4)])
    pi = Permutation([4, 3, 2, 1, 0])
    G2 = G1.relabel(pi)
    matching = kcore_match_exact(G1, G2, 2)
    # the triangle is the only 2-core; it matches onto its image under pi
    assert matching.domain.tolist() == [0, 1, 2]
    assert set(matching.image.tolist()) == {2, 3, 4}


@pytest.mark.parametrize("seed", range(12))
def test_exact_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 7))
    k = int(rng.integers(1, 3))
    G1, G2, _ = correlated_pair(n, 0.8, 0.85, seed)
    assert kcore_match_exact(G1, G2, k) == brute_force_kcore_estimator(G1, G2, k)


@pytest.mark.parametrize("seed", range(6))
def test_exact_is_at_least_the_oracle(seed):
    params = CcsbmParams(n=6, p=0.8, q=0.4, s=0.8, R=1.0, d=1, rho=0.5)
    inst = sample_instance(params, Seed(master=40, stream=seed))
    for k in (1, 2):
        exact = kcore_match_exact(inst.graph1, inst.graph2, k)
        assert exact.size >= kcore_match_oracle(inst, k).size


def test_exact_refuses_large_graphs():
    G = SimpleGraph.empty(9)
    with pytest.raises(CapacityError):
        kcore_match_exact(G, G, 1, limit=8)


def test_exact_state_budget():
    G = SimpleGraph.complete(8)
    with pytest.raises(CapacityError):
        kcore_match_exact(G, G, 7, max_states=3)


def test_exact_rejects_bad_arguments(triangle):
    with pytest.raises(ArgumentError):
        kcore_match_exact(triangle, SimpleGraph.empty(4), 1)
    with pytest.raises(ArgumentError):
        kcore_match_exact(triangle, triangle, -1)
