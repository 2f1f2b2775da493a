"""compop-lab FastAPI service entry point."""

import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from compop import VERSION, paths
from compop.errors import LabError
from compop.routers import experiments as experiments_router
from compop.routers import settings as settings_router
from compop.routers import symbols as symbols_router
from compop.services.settings import load_settings

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    paths.init()
    load_settings()
    logger.info("data directory %s", paths.get_data_dir())
    yield


app = FastAPI(title="compop-lab", version=VERSION, lifespan=lifespan)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(symbols_router.router)
app.include_router(experiments_router.router)
app.include_router(settings_router.router)


@app.exception_handler(LabError)
async def lab_error_handler(request, exc: LabError):
    return JSONResponse(
        status_code=exc.status_code,
        content={"error": exc.detail, "code": exc.code},
    )


@app.get("/health")
def health() -> dict[str, str]:
    return {"status": "ok", "version": VERSION}
