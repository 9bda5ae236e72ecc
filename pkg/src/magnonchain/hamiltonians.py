"""Dense Hermitian matrices for magnons on an open chain.

Three builders share one basis-level hopping structure: the static chain
with endpoint potentials from the nearest-neighbor coupling, the driven
tilted chain in the lab frame, and its rotating-frame counterpart with a
three-harmonic complex exchange.  Hard-core exclusion is enforced by the
basis enumeration itself, so every builder stays inside one magnon-number
sector.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import ChainParams, MagnonBasis

__all__ = [
    "HermitianOperator",
    "static_magnon_hamiltonian",
    "coupling_at",
    "rotating_frame_hamiltonian",
    "lab_frame_hamiltonian",
    "gauge_phases",
    "expm_hermitian",
]

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Dense Hermitian matrix over a magnon basis.

    ``period`` is set when the operator is a stroboscopic effective
    Hamiltonian; ``branch_cut_flagged`` marks eigenphases found within
    1e-10 of the log branch cut during its construction.
    """

    basis: MagnonBasis
    matrix: np.ndarray
    period: float | None = None
    branch_cut_flagged: bool = False

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=complex)
        dim = self.basis.dim
        if matrix.shape != (dim, dim):
            raise ValueError(f"matrix shape {matrix.shape} does not match basis dimension {dim}")
        defect = float(np.abs(matrix - matrix.conj().T).max()) if dim else 0.0
        if defect > HERMITICITY_TOL:
            raise ValueError(f"matrix is not Hermitian: max |M - M^dag| = {defect:.3e}")
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.basis.dim

    def eigh(self) -> tuple[np.ndarray, np.ndarray]:
        """Ascending eigenvalues and orthonormal eigenvector columns."""
        return np.linalg.eigh(self.matrix)


@lru_cache(maxsize=64)
def _right_move_matrix(basis: MagnonBasis) -> np.ndarray:
    """0/1 matrix R with R[i, j] = 1 when config i is config j with one
    magnon moved from some site s to s+1 (target site free)."""
    dim = basis.dim
    R = np.zeros((dim, dim))
    for j, config in enumerate(basis.configs):
        occupied = set(config)
        for s in config:
            if s + 1 <= basis.L and s + 1 not in occupied:
                moved = tuple(sorted(occupied - {s} | {s + 1}))
                R[basis.index_of[moved], j] = 1.0
    return R


@lru_cache(maxsize=64)
def _adjacent_pair_counts(basis: MagnonBasis) -> np.ndarray:
    counts = np.zeros(basis.dim)
    for j, config in enumerate(basis.configs):
        counts[j] = sum(1 for a, b in zip(config, config[1:]) if b == a + 1)
    return counts


@lru_cache(maxsize=64)
def _edge_occupations(basis: MagnonBasis) -> tuple[np.ndarray, np.ndarray]:
    """Indicator vectors for site 1 / site L occupied, per configuration."""
    left = np.array([1.0 if 1 in c else 0.0 for c in basis.configs])
    right = np.array([1.0 if basis.L in c else 0.0 for c in basis.configs])
    return left, right


@lru_cache(maxsize=64)
def _site_sum(basis: MagnonBasis) -> np.ndarray:
    return np.array([float(sum(c)) for c in basis.configs])


def _interaction_diagonal(params: ChainParams, basis: MagnonBasis) -> np.ndarray:
    """Delta * (adjacent pairs) - Delta/2 at each occupied endpoint."""
    left, right = _edge_occupations(basis)
    return params.Delta * _adjacent_pair_counts(basis) - 0.5 * params.Delta * (left + right)


def _check_match(params: ChainParams, basis: MagnonBasis) -> None:
    if params.L != basis.L:
        raise ValueError(f"params have L={params.L} but basis has L={basis.L}")


def static_magnon_hamiltonian(params: ChainParams, basis: MagnonBasis) -> HermitianOperator:
    """Undriven magnon Hamiltonian: hopping J0/2 on nearest-neighbor moves,
    interaction Delta per adjacent magnon pair, and -Delta/2 on each
    occupied endpoint."""
    _check_match(params, basis)
    R = _right_move_matrix(basis)
    H = 0.5 * params.J0 * (R + R.T) + np.diag(_interaction_diagonal(params, basis))
    return HermitianOperator(basis=basis, matrix=H.astype(complex))


def coupling_at(t: float, params: ChainParams) -> complex:
    """Complex exchange of the rotating frame at time ``t``.

    Three harmonics M0, M1, M2 rotate at omega-B, -B and -(omega+B); at
    resonance (omega == B) this reduces to M0 + M1 e^{-i omega t} +
    M2 e^{-i 2 omega t}.  Only the resonant case is validated against the
    effective models.
    """
    if not math.isfinite(t):
        raise ValueError(f"time must be finite, got {t}")
    w, B = params.omega, params.B
    return (
        params.M0 * cmath.exp(1j * (w - B) * t)
        + params.M1 * cmath.exp(-1j * B * t)
        + params.M2 * cmath.exp(-1j * (w + B) * t)
    )


def _rotating_matrix(t: float, params: ChainParams, basis: MagnonBasis) -> np.ndarray:
    J = coupling_at(t, params)
    R = _right_move_matrix(basis)
    # J(t) multiplies the left-moving term a^dag_l a_{l+1} = R^T.
    H = J * R.T + np.conj(J) * R
    H[np.diag_indices_from(H)] += _interaction_diagonal(params, basis)
    return H


def rotating_frame_hamiltonian(t: float, params: ChainParams, basis: MagnonBasis) -> HermitianOperator:
    """Rotating-frame Hamiltonian: complex exchange ``coupling_at(t)`` on
    leftward magnon moves (conjugate for the reverse), same diagonal as the
    static model.  The linear tilt is absorbed by the frame."""
    _check_match(params, basis)
    return HermitianOperator(basis=basis, matrix=_rotating_matrix(t, params, basis))


def _lab_matrix(t: float, params: ChainParams, basis: MagnonBasis) -> np.ndarray:
    if not math.isfinite(t):
        raise ValueError(f"time must be finite, got {t}")
    J = 0.5 * (params.J0 + params.J1 * math.cos(params.omega * t))
    R = _right_move_matrix(basis)
    H = (J * (R + R.T)).astype(complex)
    diag = _interaction_diagonal(params, basis) + params.B * _site_sum(basis)
    H[np.diag_indices_from(H)] += diag
    return H


def lab_frame_hamiltonian(t: float, params: ChainParams, basis: MagnonBasis) -> HermitianOperator:
    """Lab-frame Hamiltonian: real exchange [J0 + J1 cos(omega t)]/2 plus a
    linear tilt B*l on top of the static diagonal."""
    _check_match(params, basis)
    return HermitianOperator(basis=basis, matrix=_lab_matrix(t, params, basis))


def expm_hermitian(matrix: np.ndarray, scale: float) -> np.ndarray:
    """exp(-i * scale * matrix) for a Hermitian matrix, via its
    eigendecomposition."""
    evals, evecs = np.linalg.eigh(matrix)
    return (evecs * np.exp(-1j * scale * evals)) @ evecs.conj().T


def gauge_phases(basis: MagnonBasis, B: float, t: float) -> np.ndarray:
    """Diagonal of the tilt-removing gauge at time ``t``: one phase
    exp(i B t l) per occupied site.  Multiplying lab-frame amplitudes by
    these phases yields the rotating-frame amplitudes."""
    return np.exp(1j * B * t * _site_sum(basis))
