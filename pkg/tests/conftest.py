import numpy as np
import pytest

from app.core.structures import SimpleGraph
from app.models.samplers import sample_instance
from app.schemas.params import CcsbmParams, CgmmParams, Seed


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def triangle():
    return SimpleGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def cgmm_params():
    return CgmmParams(n=60, d=40, rho=0.9, R=30.0)


@pytest.fixture
def ccsbm_params():
    return CcsbmParams.from_rates(n=120, a=20.0, b=4.0, s=0.9, R=8.0, d=10, rho=0.6)


@pytest.fixture
def cgmm_instance(cgmm_params):
    return sample_instance(cgmm_params, Seed(master=7, stream=1))


@pytest.fixture
def ccsbm_instance(ccsbm_params):
    return sample_instance(ccsbm_params, Seed(master=7, stream=2))
