from fastapi import APIRouter, Depends, HTTPException, status

from ....core.settings import Settings
from ....harness.trials import execute_trial
from ....schemas.api import TrialRequest
from ....schemas.experiment import ExperimentConfig, TrialRecord
from ...dependencies.settings import get_settings

experiments_router = APIRouter(prefix="/experiments")

GRID_FIELDS = ("n", "d", "rho", "R", "p", "q", "s")


@experiments_router.post("/trial", response_model=TrialRecord)
def run_single_trial(request: TrialRequest, config: Settings = Depends(get_settings)):
    params = request.params
    if params.n > config.api_max_n:
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail=f"n={params.n} exceeds the API limit of {config.api_max_n}",
        )
    values = {
        key: float(value)
        for key, value in params.model_dump(include=set(GRID_FIELDS)).items()
        if value is not None
    }
    experiment = ExperimentConfig(
        name="api",
        model=params.model,
        grid={key: [value] for key, value in values.items()},
        trials=1,
        seed=request.seed.master,
        methods=request.methods,
        match_mode=request.match_mode,
        k=request.k,
        eps=request.eps,
        C=request.C,
    )
    return execute_trial("api", 0, values, params, request.seed, experiment)
