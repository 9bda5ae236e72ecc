"""Chain parameters, derived drive couplings, and fixed-number magnon bases.

Site labels are 1-based (configurations are tuples of occupied sites),
matrix/vector indices are 0-based.  All container types are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple

import numpy as np

__all__ = [
    "ChainParams",
    "DerivedCouplings",
    "MagnonBasis",
    "StateVector",
    "build_basis",
    "derived_couplings",
]

NORM_TOL = 1e-10


@dataclass(frozen=True)
class ChainParams:
    """Physical parameters of the driven tilted spin chain.

    L      : number of sites (>= 1)
    J0     : static exchange strength (energy unit, default 1)
    J1     : exchange modulation amplitude
    Delta  : nearest-neighbor interaction
    B      : magnetic-field gradient per site; None selects 0, or omega
             when ``resonant`` is set, so the resonance holds exactly
    omega  : modulation frequency (hbar = 1)
    resonant: assert the drive is tuned to the gradient (omega == B)
    """

    L: int
    J0: float = 1.0
    J1: float = 0.0
    Delta: float = 0.0
    B: float | None = None
    omega: float = 0.0
    resonant: bool = False

    def __post_init__(self):
        if self.L < 1:
            raise ValueError(f"chain length must be >= 1, got L={self.L}")
        if self.B is None:
            object.__setattr__(self, "B", self.omega if self.resonant else 0.0)
        if self.resonant:
            if self.omega <= 0:
                raise ValueError("resonant drive requires omega > 0")
            if self.B != self.omega:
                raise ValueError(
                    f"resonant flag requires B == omega exactly, got B={self.B}, omega={self.omega}"
                )
        if self.J1 != 0.0 and self.omega <= 0:
            raise ValueError("modulated exchange (J1 != 0) requires omega > 0")

    @classmethod
    def resonant_drive(
        cls, L: int, *, J0: float = 1.0, J1: float = 0.0, Delta: float = 0.0, omega: float
    ) -> "ChainParams":
        """Chain with the modulation frequency locked to the field gradient."""
        return cls(L=L, J0=J0, J1=J1, Delta=Delta, omega=omega, resonant=True)

    @property
    def M0(self) -> float:
        return self.J1 / 4.0

    @property
    def M1(self) -> float:
        return self.J0 / 2.0

    @property
    def M2(self) -> float:
        return self.J1 / 4.0

    @property
    def period(self) -> float:
        if self.omega <= 0:
            raise ValueError("period undefined for omega <= 0")
        return 2.0 * math.pi / self.omega

    @property
    def Delta1(self) -> float:
        """Drive-induced endpoint potential (|M1|^2 + |M2|^2 / 2) / omega."""
        if self.omega <= 0:
            raise ValueError("Delta1 undefined for omega <= 0")
        return (self.M1 ** 2 + self.M2 ** 2 / 2.0) / self.omega


class DerivedCouplings(NamedTuple):
    M0: float
    M1: float
    M2: float
    T: float
    Delta1: float


def derived_couplings(params: ChainParams) -> DerivedCouplings:
    """Harmonic amplitudes, drive period, and endpoint potential for ``params``."""
    if params.omega <= 0:
        raise ValueError("derived couplings require omega > 0")
    return DerivedCouplings(params.M0, params.M1, params.M2, params.period, params.Delta1)


@dataclass(frozen=True)
class MagnonBasis:
    """Ordered basis of N hard-core magnons on L sites.

    ``configs`` lists all site tuples l1 < l2 < ... < lN in lexicographic
    order; ``index_of`` maps a tuple back to its 0-based position.
    """

    L: int
    N: int
    configs: tuple[tuple[int, ...], ...]
    index_of: dict[tuple[int, ...], int] = field(compare=False, hash=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.configs)


def build_basis(L: int, N: int) -> MagnonBasis:
    """Enumerate all N-magnon configurations on an L-site chain.

    Configurations are strictly increasing site tuples (at most one magnon
    per site), listed lexicographically; the count is binomial(L, N).
    """
    if N < 1 or N > L:
        raise ValueError(f"magnon number must satisfy 1 <= N <= L, got N={N}, L={L}")
    configs = tuple(combinations(range(1, L + 1), N))
    index_of = {c: k for k, c in enumerate(configs)}
    return MagnonBasis(L=L, N=N, configs=configs, index_of=index_of)


@dataclass(frozen=True)
class StateVector:
    """Normalized amplitudes over a magnon basis."""

    basis: MagnonBasis
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.shape != (self.basis.dim,):
            raise ValueError(
                f"amplitude vector has shape {amps.shape}, basis dimension is {self.basis.dim}"
            )
        object.__setattr__(self, "amps", amps)
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state vector norm {norm} deviates from 1 beyond {NORM_TOL}")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    @classmethod
    def from_amplitudes(cls, basis: MagnonBasis, amps, normalize: bool = False) -> "StateVector":
        amps = np.asarray(amps, dtype=complex)
        if normalize:
            norm = np.linalg.norm(amps)
            if norm == 0:
                raise ValueError("cannot normalize a zero vector")
            amps = amps / norm
        return cls(basis=basis, amps=amps)

    @classmethod
    def basis_state(cls, basis: MagnonBasis, config: tuple[int, ...]) -> "StateVector":
        config = tuple(config)
        if config not in basis.index_of:
            raise ValueError(f"configuration {config} not in basis (L={basis.L}, N={basis.N})")
        amps = np.zeros(basis.dim, dtype=complex)
        amps[basis.index_of[config]] = 1.0
        return cls(basis=basis, amps=amps)

    @classmethod
    def single_magnon_at(cls, basis: MagnonBasis, site: int) -> "StateVector":
        """One magnon on ``site`` of a single-magnon basis."""
        if basis.N != 1:
            raise ValueError("single_magnon_at requires an N=1 basis")
        return cls.basis_state(basis, (site,))

    @classmethod
    def magnon_pair_at(cls, basis: MagnonBasis, l1: int, l2: int) -> "StateVector":
        """Two magnons on sites ``l1`` < ``l2`` of a two-magnon basis."""
        if basis.N != 2:
            raise ValueError("magnon_pair_at requires an N=2 basis")
        if not l1 < l2:
            raise ValueError(f"pair sites must satisfy l1 < l2, got ({l1}, {l2})")
        return cls.basis_state(basis, (l1, l2))

    @classmethod
    def uniform(cls, basis: MagnonBasis) -> "StateVector":
        amps = np.full(basis.dim, 1.0 / math.sqrt(basis.dim), dtype=complex)
        return cls(basis=basis, amps=amps)
