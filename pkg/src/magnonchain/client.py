"""Clients for the experiment service.

``LocalClient`` calls the runners in-process; ``HttpClient`` talks to a
running service over HTTP with the same three calls, so the CLI can
target either transparently.  HTTP 400s surface as ``ValueError`` to
match the local behavior.
"""

from __future__ import annotations

import httpx

from . import __version__
from .config import PRESET_NAMES, ExperimentConfig, RunManifest
from .runners import run

__all__ = ["LocalClient", "HttpClient"]


class LocalClient:
    def health(self) -> dict:
        return {"status": "ok", "version": __version__}

    def presets(self) -> list[str]:
        return list(PRESET_NAMES)

    def run(self, config: ExperimentConfig) -> RunManifest:
        return run(config)


class HttpClient:
    def __init__(self, base_url: str, timeout: float = 600.0):
        self._client = httpx.Client(base_url=base_url, timeout=timeout)

    def close(self) -> None:
        self._client.close()

    def health(self) -> dict:
        response = self._client.get("/health")
        response.raise_for_status()
        return response.json()

    def presets(self) -> list[str]:
        response = self._client.get("/presets")
        response.raise_for_status()
        return response.json()["presets"]

    def run(self, config: ExperimentConfig) -> RunManifest:
        response = self._client.post("/run", json=config.model_dump(mode="json"))
        if response.status_code in (400, 422):
            raise ValueError(response.json().get("detail", response.text))
        response.raise_for_status()
        return RunManifest.model_validate(response.json())
