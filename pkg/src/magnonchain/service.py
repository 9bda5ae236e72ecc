"""HTTP facade over the runners.

One POST endpoint accepts an ``ExperimentConfig`` body, runs it, and
returns the ``RunManifest``; data files land in the config's output
directory on the host running the service.  Physics-level rejections
(bad state specs, sector mismatches) map to 400, schema violations to
the usual 422.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .config import PRESET_NAMES, ExperimentConfig, RunManifest
from .runners import run

__all__ = ["create_app"]


def create_app() -> FastAPI:
    app = FastAPI(title="magnonchain", version=__version__)

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/presets")
    def presets() -> dict:
        return {"presets": list(PRESET_NAMES)}

    @app.post("/run", response_model=RunManifest)
    def run_experiment(config: ExperimentConfig) -> RunManifest:
        return run(config)

    return app
