"""State labeling for spectra of the interacting and driven chains.

Two label families: five energy bands of the static interacting
two-magnon problem (bound pairs, edge-bound flavors, independent
magnons), and four combination types of the noninteracting driven
problem (which of the two single-magnon edge modes each two-magnon state
uses).  Labels come from energy windows cross-checked against two scalar
diagnostics per state: the probability weight on configurations touching
each endpoint, and the weight bound on nearest-neighbor separations.
Localized states in the continuum are picked out as participation-ratio
outliers inside a supplied quasienergy window.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .core import MagnonBasis, StateVector
from .floquet import FloquetSpectrum
from .observables import ipr, occupancy_matrix, two_magnon_correlation

__all__ = [
    "InteractingBand",
    "CombinationType",
    "StateLabel",
    "ClassifyOptions",
    "classify_interacting_bands",
    "classify_noninteracting",
    "detect_eic_beic",
    "EicState",
    "EdgeDefectEnergies",
    "single_magnon_defect_energies",
]


class InteractingBand(Enum):
    """Five bands of the static two-magnon spectrum at strong Delta."""

    BOUND_PAIR = "i"
    BOUND_MAGNON_EDGE = "ii"
    INDEPENDENT = "iii"
    ONE_MAGNON_EDGE = "iv"
    TWO_MAGNON_EDGE = "v"
    UNCLASSIFIED = "unclassified"


class CombinationType(Enum):
    """Which single-magnon edge modes a noninteracting two-magnon state
    combines: left defect, right defect, both, or neither."""

    LEFT_EDGE_PLUS_EXTENDED = "I"
    RIGHT_EDGE_PLUS_EXTENDED = "II"
    BOTH_EDGES = "III"
    BOTH_EXTENDED = "IV"


@dataclass(frozen=True)
class StateLabel:
    """One labeled state with its scalar diagnostics; ``ambiguous`` marks
    a conflict between the energy window and the edge-weight signature."""

    index: int
    label: InteractingBand | CombinationType
    energy: float
    ipr: float
    left_weight: float
    right_weight: float
    bound_fraction: float
    ambiguous: bool = False


@dataclass(frozen=True)
class ClassifyOptions:
    """Thresholds for the classification heuristics.

    ``window_half_width`` caps the |Delta|/4 band windows;
    ``edge_threshold`` is the weight above which a state counts as
    localized at an endpoint; ``bound_threshold`` likewise for
    nearest-neighbor pair weight; ``band_margin_factor`` widens the
    noninteracting windows by this fraction of |J1|.
    """

    window_half_width: float | None = None
    edge_threshold: float = 0.5
    bound_threshold: float = 0.5
    band_margin_factor: float = 0.25


def _state_diagnostics(basis: MagnonBasis, column: np.ndarray) -> tuple[float, float, float]:
    """(left weight, right weight, nearest-neighbor fraction) of one
    normalized state column."""
    occ = occupancy_matrix(basis)
    probs = np.abs(column) ** 2
    left = float(occ[0] @ probs)
    right = float(occ[-1] @ probs)
    state = StateVector.from_amplitudes(basis, column, normalize=True)
    bound = two_magnon_correlation(state).nearest_neighbor_fraction()
    return left, right, bound


def classify_interacting_bands(
    energies: np.ndarray,
    states: np.ndarray,
    basis: MagnonBasis,
    Delta: float,
    J0: float,
    options: ClassifyOptions | None = None,
) -> list[StateLabel]:
    """Label eigenstates of the static interacting two-magnon chain.

    Energy windows sit at {Delta, Delta/2, 0, -Delta/2, -Delta} with
    half-width min(|Delta|/4, cap); a window hit must agree with the
    state's edge/bound signature, otherwise the state is Unclassified.
    Bands only separate for |Delta| well above 4*J0.
    """
    if basis.N != 2:
        raise ValueError(f"band classification requires a two-magnon basis, got N={basis.N}")
    energies = np.asarray(energies, dtype=float)
    states = np.asarray(states, dtype=complex)
    if states.shape != (basis.dim, energies.size):
        raise ValueError(
            f"expected states of shape ({basis.dim}, {energies.size}), got {states.shape}"
        )
    opts = options or ClassifyOptions()
    half = abs(Delta) / 4.0
    if opts.window_half_width is not None:
        half = min(half, opts.window_half_width)
    centers = {
        InteractingBand.BOUND_PAIR: Delta,
        InteractingBand.BOUND_MAGNON_EDGE: 0.5 * Delta,
        InteractingBand.INDEPENDENT: 0.0,
        InteractingBand.ONE_MAGNON_EDGE: -0.5 * Delta,
        InteractingBand.TWO_MAGNON_EDGE: -Delta,
    }
    iprs = ipr(states)
    out = []
    for k in range(energies.size):
        E = energies[k]
        left, right, bound = _state_diagnostics(basis, states[:, k])
        hits = [band for band, c in centers.items() if abs(E - c) <= half]
        label = InteractingBand.UNCLASSIFIED
        if len(hits) == 1 and _interacting_signature_ok(
            hits[0], left, right, bound, opts
        ):
            label = hits[0]
        out.append(
            StateLabel(
                index=k,
                label=label,
                energy=float(E),
                ipr=float(iprs[k]),
                left_weight=left,
                right_weight=right,
                bound_fraction=bound,
            )
        )
    return out


def _interacting_signature_ok(
    band: InteractingBand,
    left: float,
    right: float,
    bound: float,
    opts: ClassifyOptions,
) -> bool:
    et, bt = opts.edge_threshold, opts.bound_threshold
    edge_sum = left + right
    if band is InteractingBand.BOUND_PAIR:
        return bound > bt and edge_sum <= et
    if band is InteractingBand.BOUND_MAGNON_EDGE:
        return bound > bt and edge_sum > et
    if band is InteractingBand.INDEPENDENT:
        return bound <= bt and edge_sum <= et
    if band is InteractingBand.ONE_MAGNON_EDGE:
        return bound <= bt and edge_sum > et
    if band is InteractingBand.TWO_MAGNON_EDGE:
        return left > et and right > et
    return False


def classify_noninteracting(
    floquet: FloquetSpectrum,
    epsilon_minus: float,
    epsilon_plus: float,
    J1: float,
    options: ClassifyOptions | None = None,
) -> list[StateLabel]:
    """Label two-magnon Floquet states of the noninteracting chain by
    which single-magnon edge modes they combine.

    ``epsilon_minus``/``epsilon_plus`` are the left/right single-magnon
    defect quasienergies (no ordering assumed).  The label itself comes
    from the per-endpoint weights; a state whose quasienergy falls
    outside the window its label predicts (defect + single-particle band
    of half-width |J1|/2, both defects, or the two-particle continuum
    [-|J1|, |J1|]) is flagged ambiguous.
    """
    basis = floquet.basis
    if basis.N != 2:
        raise ValueError(f"combination typing requires a two-magnon basis, got N={basis.N}")
    opts = options or ClassifyOptions()
    et = opts.edge_threshold
    band_half = 0.5 * abs(J1)
    margin = opts.band_margin_factor * abs(J1)
    windows = {
        CombinationType.LEFT_EDGE_PLUS_EXTENDED: (
            epsilon_minus - band_half - margin,
            epsilon_minus + band_half + margin,
        ),
        CombinationType.RIGHT_EDGE_PLUS_EXTENDED: (
            epsilon_plus - band_half - margin,
            epsilon_plus + band_half + margin,
        ),
        CombinationType.BOTH_EDGES: (
            epsilon_minus + epsilon_plus - margin,
            epsilon_minus + epsilon_plus + margin,
        ),
        CombinationType.BOTH_EXTENDED: (-abs(J1) - margin, abs(J1) + margin),
    }
    out = []
    for k in range(floquet.quasienergies.size):
        E = float(floquet.quasienergies[k])
        left, right, bound = _state_diagnostics(basis, floquet.states[:, k])
        if left > et and right > et:
            label = CombinationType.BOTH_EDGES
        elif left > et:
            label = CombinationType.LEFT_EDGE_PLUS_EXTENDED
        elif right > et:
            label = CombinationType.RIGHT_EDGE_PLUS_EXTENDED
        else:
            label = CombinationType.BOTH_EXTENDED
        lo, hi = windows[label]
        out.append(
            StateLabel(
                index=k,
                label=label,
                energy=E,
                ipr=float(floquet.iprs[k]),
                left_weight=left,
                right_weight=right,
                bound_fraction=bound,
                ambiguous=not (lo <= E <= hi),
            )
        )
    return out


class EicState(NamedTuple):
    """A localized state inside the scattering continuum."""

    index: int
    quasienergy: float
    ipr: float


def detect_eic_beic(
    floquet: FloquetSpectrum,
    continuum_window: tuple[float, float],
    ipr_threshold: float = 10.0,
) -> list[EicState]:
    """States whose quasienergy lies inside ``continuum_window`` and whose
    participation ratio exceeds ``ipr_threshold`` times the median over
    the window."""
    lo, hi = continuum_window
    if hi < lo:
        return []
    E = floquet.quasienergies
    inside = np.flatnonzero((E >= lo) & (E <= hi))
    if inside.size == 0:
        return []
    median = float(np.median(floquet.iprs[inside]))
    return [
        EicState(index=int(k), quasienergy=float(E[k]), ipr=float(floquet.iprs[k]))
        for k in inside
        if floquet.iprs[k] > ipr_threshold * median
    ]


class EdgeDefectEnergies(NamedTuple):
    left: float
    right: float


def single_magnon_defect_energies(floquet: FloquetSpectrum) -> EdgeDefectEnergies:
    """Quasienergies of the two single-magnon edge modes, identified as
    the states with the most weight on site 1 and on site L."""
    if floquet.basis.N != 1:
        raise ValueError(f"defect energies come from an N=1 spectrum, got N={floquet.basis.N}")
    probs = np.abs(floquet.states) ** 2
    left_idx = int(np.argmax(probs[0]))
    right_idx = int(np.argmax(probs[-1]))
    return EdgeDefectEnergies(
        left=float(floquet.quasienergies[left_idx]),
        right=float(floquet.quasienergies[right_idx]),
    )
