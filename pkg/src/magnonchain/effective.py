"""Static effective models for the resonantly driven tilted chain.

At resonance the fast drive renormalizes the chain to a static picture:
uniform hopping M0 = J1/4 and an endpoint potential split by
Delta1 = (|M1|^2 + |M2|^2/2)/omega, deepening the left edge and lifting
the right one.  The same asymmetry survives without any modulation as
the second-order defect of the tilted chain, -J0^2/(4B) on the left
endpoint and +J0^2/(4B) on the right.
"""

from __future__ import annotations

import warnings
from typing import NamedTuple

import numpy as np

from .core import ChainParams, MagnonBasis
from .floquet import FloquetSpectrum
from .hamiltonians import HermitianOperator, _right_move_matrix

__all__ = [
    "ValidityWarning",
    "effective_single",
    "effective_two",
    "effective_single_matrix",
    "effective_two_matrix",
    "WannierZeemanDefects",
    "wannier_zeeman_defects",
    "spectral_deviation",
]

# factor by which the drive frequency should dominate the exchange scales
VALIDITY_RATIO = 5.0


class ValidityWarning(UserWarning):
    """Parameters sit outside the regime where the perturbative model is
    controlled; results are returned anyway."""


def _check_regime(params: ChainParams) -> None:
    scale = max(abs(params.J0), abs(params.J1))
    if params.omega < VALIDITY_RATIO * scale:
        warnings.warn(
            f"drive frequency {params.omega} is not large against the exchange "
            f"scale {scale}; the static effective model is uncontrolled here",
            ValidityWarning,
            stacklevel=3,
        )


def effective_single_matrix(L: int, M0: float, Delta: float, Delta1: float) -> np.ndarray:
    """Tridiagonal single-magnon model: hopping M0, endpoint potentials
    -(Delta/2 + Delta1) at site 1 and -(Delta/2 - Delta1) at site L."""
    H = np.zeros((L, L))
    idx = np.arange(L - 1)
    H[idx, idx + 1] = M0
    H[idx + 1, idx] = M0
    H[0, 0] = -(0.5 * Delta + Delta1)
    H[L - 1, L - 1] = -(0.5 * Delta - Delta1)
    return H


def effective_two_matrix(basis: MagnonBasis, M0: float, Delta: float, Delta1: float) -> np.ndarray:
    """Two-magnon model: hopping M0 on single-site magnon steps, diagonal
    Delta for adjacent pairs, -(Delta/2 + Delta1) when site 1 is occupied
    and -(Delta/2 - Delta1) when site L is; the (1, L) configuration
    feels both."""
    R = _right_move_matrix(basis)
    H = M0 * (R + R.T)
    for j, (l1, l2) in enumerate(basis.configs):
        diag = 0.0
        if l2 == l1 + 1:
            diag += Delta
        if l1 == 1:
            diag -= 0.5 * Delta + Delta1
        if l2 == basis.L:
            diag -= 0.5 * Delta - Delta1
        H[j, j] += diag
    return H


def _check_effective_args(params: ChainParams, basis: MagnonBasis, N: int) -> None:
    if basis.N != N:
        raise ValueError(f"expected an N={N} basis, got N={basis.N}")
    if params.L != basis.L:
        raise ValueError(f"params have L={params.L} but basis has L={basis.L}")
    if not params.resonant:
        raise ValueError("effective models require resonant parameters (omega == B)")


def effective_single(params: ChainParams, basis: MagnonBasis) -> HermitianOperator:
    """Drive-renormalized single-magnon model (requires resonance)."""
    _check_effective_args(params, basis, 1)
    _check_regime(params)
    matrix = effective_single_matrix(params.L, params.M0, params.Delta, params.Delta1)
    return HermitianOperator(basis=basis, matrix=matrix.astype(complex))


def effective_two(params: ChainParams, basis: MagnonBasis) -> HermitianOperator:
    """Drive-renormalized two-magnon model (requires resonance)."""
    _check_effective_args(params, basis, 2)
    _check_regime(params)
    matrix = effective_two_matrix(basis, params.M0, params.Delta, params.Delta1)
    return HermitianOperator(basis=basis, matrix=matrix.astype(complex))


class WannierZeemanDefects(NamedTuple):
    """Second-order endpoint defects of the tilted undriven chain."""

    left_shift: float
    right_shift: float
    left_energy: float
    right_energy: float


def wannier_zeeman_defects(params: ChainParams) -> WannierZeemanDefects:
    """Endpoint shifts -+J0^2/(4B) of the tilted chain and the resulting
    perturbed endpoint energies B - J0^2/(4B) and L*B + J0^2/(4B).

    Valid for B much larger than J0; smaller fields warn but still
    return the closed forms.
    """
    if params.B == 0.0:
        raise ZeroDivisionError("endpoint shifts J0^2/(4B) are undefined at B = 0")
    if abs(params.B) < VALIDITY_RATIO * abs(params.J0):
        warnings.warn(
            f"field gradient {params.B} is not large against the exchange {params.J0}; "
            "the second-order defect formulas are uncontrolled here",
            ValidityWarning,
            stacklevel=2,
        )
    shift = params.J0**2 / (4.0 * params.B)
    return WannierZeemanDefects(
        left_shift=-shift,
        right_shift=+shift,
        left_energy=params.B - shift,
        right_energy=params.L * params.B + shift,
    )


def spectral_deviation(exact: FloquetSpectrum, model: HermitianOperator) -> float:
    """Max absolute difference between the exact quasienergies and the
    model's eigenvalues, after folding the latter into the fundamental
    zone and sorting both."""
    evals = np.linalg.eigvalsh(model.matrix)
    if evals.size != exact.quasienergies.size:
        raise ValueError(
            f"dimension mismatch: model has {evals.size} levels, "
            f"exact spectrum has {exact.quasienergies.size}"
        )
    omega = exact.omega
    if evals.size and evals[-1] - evals[0] > omega:
        raise ValueError("model spectrum spans more than one quasienergy zone")
    # Folding is a no-op for values already in the zone; skip it there so the
    # modulo arithmetic doesn't perturb them at the last bit.
    in_zone = (evals >= -0.5 * omega) & (evals < 0.5 * omega)
    folded = np.where(in_zone, evals, ((evals + 0.5 * omega) % omega) - 0.5 * omega)
    folded = np.sort(folded)
    return float(np.abs(folded - exact.quasienergies).max())
