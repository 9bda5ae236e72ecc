"""Time evolution of magnon states.

An undriven Hamiltonian is propagated exactly through one
eigendecomposition; driven chains use midpoint-sampled piecewise-constant
steps, which converge at second order in the step size.  Both produce a
``Trajectory`` holding amplitudes at the requested sample times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import ChainParams, MagnonBasis, StateVector
from .hamiltonians import HermitianOperator, _lab_matrix, _rotating_matrix, expm_hermitian
from .observables import CorrelationMatrix, occupancy_matrix, two_magnon_correlation

__all__ = ["Trajectory", "evolve_static", "evolve_driven"]

FRAMES = ("rotating", "lab")
NORM_DRIFT_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Amplitudes sampled along an evolution: ``amps[k]`` is the state at
    ``times[k]``.  Sample times are strictly increasing and the stored
    amplitudes stay normalized (loose 1e-6 guard; the integrators hold
    norm far tighter)."""

    basis: MagnonBasis
    times: np.ndarray
    amps: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        amps = np.asarray(self.amps, dtype=complex)
        if times.ndim != 1 or amps.shape != (times.size, self.basis.dim):
            raise ValueError(
                f"expected amps of shape ({times.size}, {self.basis.dim}), got {amps.shape}"
            )
        if times.size > 1 and np.any(np.diff(times) <= 0):
            raise ValueError("times must be strictly increasing")
        drift = float(np.abs(np.linalg.norm(amps, axis=1) - 1.0).max()) if times.size else 0.0
        if drift > NORM_DRIFT_TOL:
            raise ValueError(f"stored amplitudes drift from unit norm by {drift:.3e}")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "amps", amps)

    def __len__(self) -> int:
        return self.times.size

    @cached_property
    def densities(self) -> np.ndarray:
        """(n_times, L) array of site densities."""
        return np.abs(self.amps) ** 2 @ occupancy_matrix(self.basis).T

    @cached_property
    def magnetizations(self) -> np.ndarray:
        return self.densities - 0.5

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.amps, axis=1)

    def state_at(self, index: int) -> StateVector:
        return StateVector.from_amplitudes(self.basis, self.amps[index], normalize=True)

    def correlation_at(self, index: int) -> CorrelationMatrix:
        return two_magnon_correlation(self.state_at(index))

    @property
    def final_state(self) -> StateVector:
        return self.state_at(-1)


def _validated_times(times) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a non-empty 1-D array")
    if not np.all(np.isfinite(times)):
        raise ValueError("times must be finite")
    if times.size > 1 and np.any(np.diff(times) <= 0):
        raise ValueError("times must be strictly increasing")
    return times


def evolve_static(H: HermitianOperator, psi0: StateVector, times) -> Trajectory:
    """Exact evolution psi(t) = V exp(-iEt) V^dag psi0 from a single
    eigendecomposition, with ``psi0`` the state at t = 0."""
    if H.basis != psi0.basis:
        raise ValueError("operator and state use different bases")
    times = _validated_times(times)
    evals, evecs = H.eigh()
    coeffs = evecs.conj().T @ psi0.amps
    phases = np.exp(-1j * np.outer(times, evals))
    return Trajectory(basis=psi0.basis, times=times, amps=(phases * coeffs) @ evecs.T)


def evolve_driven(
    params: ChainParams,
    basis: MagnonBasis,
    psi0: StateVector,
    times,
    frame: str = "rotating",
    dt: float | None = None,
) -> Trajectory:
    """Midpoint-stepped evolution under the driven chain, with ``psi0``
    the state at ``times[0]``.

    ``frame`` selects the lab-frame Hamiltonian (real modulated exchange
    plus tilt) or its rotating-frame image (complex exchange, no tilt).
    Each interval between samples is subdivided so no step exceeds ``dt``
    (default: 1/256 of the drive period).
    """
    if frame not in FRAMES:
        raise ValueError(f"frame must be one of {FRAMES}, got {frame!r}")
    if basis != psi0.basis:
        raise ValueError("basis and state basis differ")
    if params.L != basis.L:
        raise ValueError(f"params have L={params.L} but basis has L={basis.L}")
    times = _validated_times(times)
    if dt is None:
        if params.omega <= 0.0:
            raise ValueError("dt is required when the drive period is undefined")
        dt = params.period / 256
    if not (math.isfinite(dt) and dt > 0.0):
        raise ValueError(f"dt must be positive and finite, got {dt}")

    build = _lab_matrix if frame == "lab" else _rotating_matrix
    psi = psi0.amps.copy()
    out = np.empty((times.size, basis.dim), dtype=complex)
    out[0] = psi
    for k in range(times.size - 1):
        t0, t1 = times[k], times[k + 1]
        # The tiny slack keeps an interval that is a whole number of steps
        # up to float rounding (e.g. one drive period) from gaining a step.
        n_sub = max(1, math.ceil((t1 - t0) / dt * (1.0 - 1e-12)))
        h = (t1 - t0) / n_sub
        for j in range(n_sub):
            t_mid = t0 + (j + 0.5) * h
            psi = expm_hermitian(build(t_mid, params, basis), h) @ psi
        out[k + 1] = psi
    return Trajectory(basis=basis, times=times, amps=out)
