from fastapi import APIRouter, Depends

from ....core.settings import Settings
from ...dependencies.settings import get_settings

settings_router = APIRouter()


@settings_router.get("/settings")
def read_settings(config: Settings = Depends(get_settings)):
    return config.model_dump()
