from fastapi.routing import APIRouter


from app.api.endpoints.main.experiments import experiments_router
from app.api.endpoints.main.settings import settings_router
from app.api.endpoints.main.theory import theory_router

main_router = APIRouter()
main_router.include_router(theory_router, tags=["THEORY"])
main_router.include_router(experiments_router, tags=["EXPERIMENTS"])
main_router.include_router(settings_router, tags=["SETTINGS"])
