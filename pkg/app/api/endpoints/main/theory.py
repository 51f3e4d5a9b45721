from fastapi import APIRouter

from ....schemas.api import ClassifyRequest, PhaseRequest
from ....schemas.phase import PhaseTable
from ....schemas.reports import RegionLabel
from ....theory.classifiers import classify_region
from ....theory.phase import phase_grid

theory_router = APIRouter(prefix="/theory")


@theory_router.post("/classify", response_model=RegionLabel)
def classify(request: ClassifyRequest):
    return classify_region(request.params, request.eps, request.C)


@theory_router.post("/phase", response_model=PhaseTable)
def phase(request: PhaseRequest):
    return phase_grid(request.grid, request.classifier)
