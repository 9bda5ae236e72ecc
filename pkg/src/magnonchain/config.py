"""Run configuration and manifest models.

An ``ExperimentConfig`` is one validated request: which computation to
run, the chain parameters, and the run-specific knobs (state spec, time
grid, sweep grid, thresholds, output directory).  Configs arrive either
as JSON (service) or as flat ``key = value`` INI text (CLI); unknown
keys are rejected in both paths.  ``RunManifest`` is the record written
next to the data files: config echo, derived couplings, checksums and
timings.
"""

from __future__ import annotations

import configparser
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .core import ChainParams, derived_couplings

__all__ = [
    "PRESET_NAMES",
    "ExperimentConfig",
    "OutputRecord",
    "RunManifest",
    "chain_params",
    "derived_dict",
    "load_config",
    "read_flat",
]

PRESET_NAMES = ("fig1", "fig2", "fig3", "fig5", "fig6")

Kind = Literal["spectrum", "dynamics", "floquet", "classify", "sweep", "preset"]


class ExperimentConfig(BaseModel):
    """One run request.  Fields not used by the requested kind keep their
    defaults; fields the kind does need are checked up front so nothing
    fails halfway through a computation."""

    model_config = ConfigDict(extra="forbid")

    kind: Kind

    # chain
    L: int = Field(default=21, ge=1)
    J0: float = 1.0
    J1: float = 0.0
    Delta: float = 0.0
    B: float | None = None
    omega: float = 0.0
    resonant: bool = False
    N: int = Field(default=1, ge=1, description="magnon number")

    # integrator
    steps: int = Field(default=256, ge=1, description="propagator steps per drive period")

    # dynamics
    state: str | None = Field(
        default=None, description="initial state: 'site:<l>' or 'pair:<l1>,<l2>'"
    )
    frame: Literal["rotating", "lab"] = "rotating"
    t_max: float | None = Field(default=None, description="time span in units of 2*pi/J0")
    samples: int = Field(default=201, ge=2)
    periods: int | None = Field(default=None, ge=1, description="stroboscopic drive cycles")
    record_stride: int = Field(default=1, ge=1, description="record every k-th cycle")

    # sweep
    axis: Literal["Delta", "J1"] | None = None
    start: float | None = None
    stop: float | None = None
    step: float | None = None

    # classification thresholds
    ipr_threshold: float = Field(default=10.0, gt=0)
    edge_threshold: float = Field(default=0.5, gt=0, lt=1)

    # io
    out: str = "runs"
    threads: int = Field(default=1, ge=1)
    preset: str | None = None

    @model_validator(mode="after")
    def _check_kind_requirements(self) -> "ExperimentConfig":
        if self.N > self.L:
            raise ValueError(f"N={self.N} magnons do not fit on L={self.L} sites")
        if self.resonant:
            if self.omega <= 0:
                raise ValueError("resonant runs require omega > 0")
            if self.B is not None and self.B != self.omega:
                raise ValueError("resonant runs require B == omega (or B unset)")
        if self.kind in ("floquet", "classify") and not self.resonant:
            raise ValueError(f"kind={self.kind} requires resonant = true")
        if self.kind == "classify" and self.N != 2:
            raise ValueError("classification labels the two-magnon sector; set N = 2")
        if self.kind == "dynamics":
            if self.state is None:
                raise ValueError("dynamics requires a 'state' spec ('site:<l>' or 'pair:<l1>,<l2>')")
            if (self.t_max is None) == (self.periods is None):
                raise ValueError("dynamics requires exactly one of t_max or periods")
            if self.periods is not None and not self.resonant:
                raise ValueError("stroboscopic sampling (periods) requires resonant = true")
            if self.t_max is not None and self.t_max <= 0:
                raise ValueError("t_max must be positive")
            if not self.resonant and self.B not in (None, 0.0):
                raise ValueError("undriven dynamics does not support a field gradient; set B = 0")
        if self.kind == "sweep":
            missing = [k for k in ("axis", "start", "stop", "step") if getattr(self, k) is None]
            if missing:
                raise ValueError(f"sweep requires {', '.join(missing)}")
            if self.step <= 0:
                raise ValueError("sweep step must be positive")
            if self.stop < self.start:
                raise ValueError("sweep needs start <= stop")
            if self.axis == "J1" and not self.resonant:
                raise ValueError("a J1 sweep scans the driven chain; set resonant = true")
        if self.kind == "preset":
            if self.preset not in PRESET_NAMES:
                raise ValueError(
                    f"unknown preset {self.preset!r}; available presets: {', '.join(PRESET_NAMES)}"
                )
        return self


def chain_params(config: ExperimentConfig) -> ChainParams:
    """The physical parameters this config describes."""
    return ChainParams(
        L=config.L,
        J0=config.J0,
        J1=config.J1,
        Delta=config.Delta,
        B=config.B,
        omega=config.omega,
        resonant=config.resonant,
    )


def derived_dict(params: ChainParams) -> dict[str, float]:
    """Derived couplings for a manifest; empty when there is no drive."""
    if params.omega <= 0:
        return {}
    d = derived_couplings(params)
    return {"M0": d.M0, "M1": d.M1, "M2": d.M2, "T": d.T, "Delta1": d.Delta1}


class OutputRecord(BaseModel):
    path: str
    sha256: str
    bytes: int


class RunManifest(BaseModel):
    """What a run produced: the config it ran, derived couplings, a
    checksum per output file, wall-clock timings, and scalar findings."""

    config: dict
    derived: dict[str, float]
    version: str
    outputs: list[OutputRecord]
    timings: dict[str, float]
    results: dict = Field(default_factory=dict)


def read_flat(path: str | Path) -> dict[str, str]:
    """Key/value pairs of a flat config file with section headers.

    Sections only organize the file; keys live in one namespace, so the
    same key in two sections is an error.
    """
    parser = configparser.ConfigParser(interpolation=None, strict=True)
    parser.optionxform = str  # keys are case-sensitive (L, J0, Delta, ...)
    text = Path(path).read_text()
    try:
        parser.read_string(text, source=str(path))
    except configparser.Error as exc:
        raise ValueError(f"could not parse {path}: {exc}") from exc
    if parser.defaults():
        raise ValueError(f"{path}: [DEFAULT] section is not supported; use named sections")
    flat: dict[str, str] = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            if key in flat:
                raise ValueError(f"{path}: key {key!r} appears in more than one section")
            flat[key] = value
    return flat


def load_config(path: str | Path, overrides: dict | None = None) -> ExperimentConfig:
    """Validated config from a file, with ``overrides`` (e.g. CLI flags)
    replacing file values; unknown keys in either are rejected."""
    flat: dict = dict(read_flat(path))
    if overrides:
        flat.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig.model_validate(flat)
