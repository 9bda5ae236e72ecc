"""Experiment runners: validated config in, files plus manifest out.

Each runner computes with the core modules, exports through a
``RunWriter``, and returns scalar findings for the manifest.  Energies
are exported in units of J0 and times in units of 2*pi/J0 so the CSV
columns read directly in the natural units of the chain.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .classify import (
    ClassifyOptions,
    classify_interacting_bands,
    classify_noninteracting,
    detect_eic_beic,
    single_magnon_defect_energies,
)
from .config import ExperimentConfig, RunManifest, chain_params
from .core import ChainParams, MagnonBasis, StateVector, build_basis
from .dynamics import Trajectory, evolve_driven, evolve_static
from .floquet import floquet_spectrum, one_period_propagator, stroboscopic_evolve
from .hamiltonians import static_magnon_hamiltonian
from .observables import ipr
from .output import RunWriter

__all__ = ["run", "parse_state", "sweep_grid", "SPECTRUM_HEADER", "BAND_ORDER"]

SPECTRUM_HEADER = ("index", "energy[J0]", "ipr", "label")
FLOQUET_HEADER = ("index", "quasienergy[J0]", "ipr", "label")
BAND_ORDER = ("i", "ii", "iii", "iv", "v")


def parse_state(spec: str, basis: MagnonBasis) -> StateVector:
    """Initial-state spec: ``site:<l>`` puts one magnon at site l,
    ``pair:<l1>,<l2>`` puts two on distinct sites."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "site":
            return StateVector.single_magnon_at(basis, int(arg))
        if kind == "pair":
            l1, l2 = (int(p) for p in arg.split(","))
            return StateVector.magnon_pair_at(basis, l1, l2)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"bad state spec {spec!r}: {exc}") from exc
    raise ValueError(f"bad state spec {spec!r}: expected 'site:<l>' or 'pair:<l1>,<l2>'")


def sweep_grid(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive arithmetic grid; the count is fixed by rounding so 0.1
    steps over [0, 20] give exactly 201 points."""
    count = int(round((stop - start) / step)) + 1 if stop > start else 1
    return start + step * np.arange(count)


def _time_unit(J0: float) -> float:
    if J0 == 0.0:
        raise ValueError("time export in units of 2*pi/J0 needs J0 != 0")
    return 2.0 * math.pi / abs(J0)


def _static_point(params: ChainParams, basis: MagnonBasis, options: ClassifyOptions):
    """Eigen-decompose the undriven chain and label the bands (two-magnon
    sectors only).  Returns (energies, iprs, labels)."""
    evals, evecs = static_magnon_hamiltonian(params, basis).eigh()
    iprs = np.array([ipr(evecs[:, k]) for k in range(evals.size)])
    if basis.N == 2:
        labeled = classify_interacting_bands(
            evals, evecs, basis, Delta=params.Delta, J0=params.J0, options=options
        )
        labels = [s.label.value for s in labeled]
    else:
        labels = [""] * evals.size
    return evals, iprs, labels


def _spectrum_rows(energies, iprs, labels, J0):
    return [
        (k, energies[k] / J0, iprs[k], labels[k])
        for k in range(len(energies))
    ]


def run_spectrum(config: ExperimentConfig, writer: RunWriter) -> dict:
    params = chain_params(config)
    basis = build_basis(config.L, config.N)
    options = ClassifyOptions(edge_threshold=config.edge_threshold)
    evals, iprs, labels = _static_point(params, basis, options)
    writer.csv("spectrum.csv", SPECTRUM_HEADER, _spectrum_rows(evals, iprs, labels, config.J0))
    return {"dim": basis.dim, "energy_min": float(evals[0]), "energy_max": float(evals[-1])}


def run_floquet(config: ExperimentConfig, writer: RunWriter) -> dict:
    params = chain_params(config)
    basis = build_basis(config.L, config.N)
    spec = floquet_spectrum(params, basis, steps=config.steps)
    labels = [""] * basis.dim
    writer.csv(
        "spectrum.csv", FLOQUET_HEADER, _spectrum_rows(spec.quasienergies, spec.iprs, labels, config.J0)
    )
    return {
        "dim": basis.dim,
        "zone_half_width": spec.zone_half_width,
        "branch_cut_flagged": spec.branch_cut_flagged,
    }


def run_classify(config: ExperimentConfig, writer: RunWriter) -> dict:
    params = chain_params(config)
    options = ClassifyOptions(edge_threshold=config.edge_threshold)
    one = floquet_spectrum(params, build_basis(config.L, 1), steps=config.steps)
    defects = single_magnon_defect_energies(one)
    two = floquet_spectrum(params, build_basis(config.L, 2), steps=config.steps)
    labeled = classify_noninteracting(two, defects.left, defects.right, config.J1, options)
    rows = [
        (s.index, s.energy / config.J0, s.ipr, s.label.value, int(s.ambiguous))
        for s in labeled
    ]
    writer.csv("spectrum.csv", FLOQUET_HEADER + ("ambiguous",), rows)
    J1 = abs(config.J1)
    outliers = detect_eic_beic(two, (-J1, J1), ipr_threshold=config.ipr_threshold)
    counts: dict[str, int] = {}
    for s in labeled:
        counts[s.label.value] = counts.get(s.label.value, 0) + 1
    return {
        "counts": counts,
        "defect_left": defects.left,
        "defect_right": defects.right,
        "continuum_outliers": [
            {"index": o.index, "quasienergy": o.quasienergy, "ipr": o.ipr} for o in outliers
        ],
    }


def _trajectory_rows(traj: Trajectory, unit: float, values: np.ndarray):
    return [(traj.times[k] / unit, *values[k]) for k in range(len(traj))]


def _write_trajectory(writer: RunWriter, name: str, traj: Trajectory, J0: float,
                      field: str = "density") -> None:
    unit = _time_unit(J0)
    values = traj.densities if field == "density" else traj.magnetizations
    prefix = "n" if field == "density" else "m"
    header = ("t[2pi/J0]",) + tuple(f"{prefix}_{l}" for l in range(1, traj.basis.L + 1))
    writer.csv(f"{name}.csv", header, _trajectory_rows(traj, unit, values))
    if field == "density":
        writer.svg(
            f"{name}.svg",
            values.T,
            title=name,
            xlabel="time [2pi/J0]",
            ylabel="site",
            vmin=0.0,
        )


def run_dynamics(config: ExperimentConfig, writer: RunWriter) -> dict:
    params = chain_params(config)
    N = 1 if config.state.startswith("site") else 2
    if N != config.N:
        raise ValueError(f"state spec {config.state!r} describes N={N}, config says N={config.N}")
    basis = build_basis(config.L, N)
    psi0 = parse_state(config.state, basis)
    if config.periods is not None:
        U = one_period_propagator(params, basis, steps=config.steps)
        traj = stroboscopic_evolve(U, psi0, config.periods, record_every=config.record_stride)
    else:
        times = np.linspace(0.0, config.t_max * _time_unit(config.J0), config.samples)
        if config.resonant:
            traj = evolve_driven(
                params, basis, psi0, times, frame=config.frame, dt=params.period / config.steps
            )
        else:
            traj = evolve_static(static_magnon_hamiltonian(params, basis), psi0, times)
    _write_trajectory(writer, "trajectory", traj, config.J0)
    dens = traj.densities
    return {
        "samples": len(traj),
        "final_site_density": {"n_1": float(dens[-1, 0]), "n_L": float(dens[-1, -1])},
        "max_norm_drift": float(np.abs(traj.norms() - 1.0).max()),
    }


def _sweep_point(config: ExperimentConfig, value: float, options: ClassifyOptions):
    """One grid point of a sweep, returning spectrum rows (no axis column)."""
    if config.axis == "Delta":
        params = ChainParams(L=config.L, J0=config.J0, Delta=float(value))
        basis = build_basis(config.L, config.N)
        evals, iprs, labels = _static_point(params, basis, options)
        if config.N == 2:
            flags = [[int(lbl == b) for b in BAND_ORDER] for lbl in labels]
        else:
            flags = [[] for _ in labels]
        return [
            (k, evals[k] / config.J0, iprs[k], labels[k], *flags[k])
            for k in range(evals.size)
        ]
    params = ChainParams.resonant_drive(
        config.L, J0=config.J0, J1=float(value), Delta=config.Delta, omega=config.omega
    )
    basis = build_basis(config.L, config.N)
    spec = floquet_spectrum(params, basis, steps=config.steps)
    return [
        (k, spec.quasienergies[k] / config.J0, spec.iprs[k], "")
        for k in range(basis.dim)
    ]


def run_sweep(config: ExperimentConfig, writer: RunWriter) -> dict:
    grid = sweep_grid(config.start, config.stop, config.step)
    options = ClassifyOptions(edge_threshold=config.edge_threshold)
    # points are independent; map() preserves grid order regardless of
    # completion order, so the output is deterministic under threading
    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        per_point = list(pool.map(lambda v: _sweep_point(config, v, options), grid))
    if config.axis == "Delta":
        header = ("Delta",) + SPECTRUM_HEADER
        if config.N == 2:
            header = header + tuple(f"band_{b}" for b in BAND_ORDER)
    else:
        header = ("J1",) + FLOQUET_HEADER
    rows = [(value, *row) for value, rows_ in zip(grid, per_point) for row in rows_]
    writer.csv("spectrum.csv", header, rows)
    return {"points": int(grid.size), "rows": len(rows)}


def run(config: ExperimentConfig) -> RunManifest:
    """Dispatch one validated request and seal its manifest."""
    from .presets import run_preset  # deferred: presets build on the runners

    writer = RunWriter(config.out)
    params = None
    with writer.timed("total"):
        if config.kind == "preset":
            results, params = run_preset(config, writer)
        else:
            runner = {
                "spectrum": run_spectrum,
                "floquet": run_floquet,
                "classify": run_classify,
                "dynamics": run_dynamics,
                "sweep": run_sweep,
            }[config.kind]
            results = runner(config, writer)
    return writer.finish(config, results, params=params)
