from fastapi import FastAPI, Request, status
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse


from app.core.exceptions import CorrnetError
from app.core.logging import configure_logging
from app.core.settings import settings
from app.api.routers.main import main_router

configure_logging(settings.log_level)

app = FastAPI(
    title=settings.title,
    description=settings.description,
    version=settings.version,
)
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.allow_origins,
    allow_credentials=settings.allow_credentials,
    allow_methods=settings.allow_methods,
    allow_headers=settings.allow_headers,
)
app.include_router(main_router)


@app.exception_handler(CorrnetError)
async def corrnet_error_handler(request: Request, exc: CorrnetError):
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={"detail": str(exc)},
    )
