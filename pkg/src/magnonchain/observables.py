"""Site-resolved measurements on magnon states.

Densities come from a cached 0/1 occupancy map between sites and basis
configurations; pair correlations are specific to the two-magnon sector,
where every configuration is one (x, y) site pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import MagnonBasis, StateVector

__all__ = [
    "occupancy_matrix",
    "density",
    "magnetization",
    "CorrelationMatrix",
    "two_magnon_correlation",
    "spin_correlation",
    "ipr",
]


@lru_cache(maxsize=64)
def occupancy_matrix(basis: MagnonBasis) -> np.ndarray:
    """(L, dim) matrix with entry 1 when the site is occupied in the
    configuration."""
    occ = np.zeros((basis.L, basis.dim))
    for j, config in enumerate(basis.configs):
        for site in config:
            occ[site - 1, j] = 1.0
    return occ


def density(state: StateVector) -> np.ndarray:
    """<n_l> for l = 1..L; sums to the magnon number."""
    return occupancy_matrix(state.basis) @ np.abs(state.amps) ** 2


def magnetization(state: StateVector) -> np.ndarray:
    """<S^z_l> = <n_l> - 1/2."""
    return density(state) - 0.5


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """Symmetric pair-density matrix C[x, y] = <n_x n_y> with zero diagonal
    (0-based site indexing in ``values``)."""

    basis: MagnonBasis
    values: np.ndarray

    @property
    def L(self) -> int:
        return self.basis.L

    def max_offdiag(self) -> float:
        return float(self.values.max())

    def normalized(self) -> "CorrelationMatrix":
        """Same matrix scaled so the largest entry is 1."""
        peak = self.max_offdiag()
        if peak <= 0.0:
            raise ValueError("correlation matrix has no positive entries to scale by")
        return CorrelationMatrix(basis=self.basis, values=self.values / peak)

    def nearest_neighbor_fraction(self) -> float:
        """Share of total pair weight sitting on |x - y| = 1."""
        total = self.values.sum()
        if total <= 0.0:
            return 0.0
        nn = np.diag(self.values, 1).sum() + np.diag(self.values, -1).sum()
        return float(nn / total)


def two_magnon_correlation(state: StateVector) -> CorrelationMatrix:
    """Pair density of a two-magnon state: C[x, y] = |amp at (x, y)|^2 for
    x != y, symmetric, zero diagonal.  Off-diagonal sum is N(N-1) = 2."""
    basis = state.basis
    if basis.N != 2:
        raise ValueError(f"pair correlation requires a two-magnon basis, got N={basis.N}")
    C = np.zeros((basis.L, basis.L))
    probs = np.abs(state.amps) ** 2
    for (x, y), p in zip(basis.configs, probs):
        C[x - 1, y - 1] = p
        C[y - 1, x - 1] = p
    return CorrelationMatrix(basis=basis, values=C)


def spin_correlation(state: StateVector) -> np.ndarray:
    """<S^z_x S^z_y>: pair density minus single-site terms off the
    diagonal, 1/4 on it."""
    C = two_magnon_correlation(state).values
    n = density(state)
    S = C - 0.5 * n[:, None] - 0.5 * n[None, :] + 0.25
    np.fill_diagonal(S, 0.25)
    return S


def ipr(amps: np.ndarray) -> np.ndarray | float:
    """Inverse participation ratio sum|u|^4 / (sum|u|^2)^2.

    Accepts a single vector or a matrix of column vectors; 1/dim for a
    uniform state, 1 for a single-configuration state.
    """
    amps = np.asarray(amps)
    p2 = np.abs(amps) ** 2
    num = (p2**2).sum(axis=0)
    den = p2.sum(axis=0) ** 2
    if np.any(den == 0.0):
        raise ValueError("zero vector has no participation ratio")
    out = num / den
    return float(out) if out.ndim == 0 else out
