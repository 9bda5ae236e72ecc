import collections

import numpy as np
import pytest

from magnonchain.classify import (
    ClassifyOptions,
    CombinationType,
    EicState,
    InteractingBand,
    classify_interacting_bands,
    classify_noninteracting,
    detect_eic_beic,
    single_magnon_defect_energies,
)
from magnonchain.core import ChainParams, build_basis
from magnonchain.floquet import FloquetSpectrum, floquet_spectrum
from magnonchain.hamiltonians import static_magnon_hamiltonian


@pytest.fixture(scope="module")
def small_interacting():
    basis = build_basis(9, 2)
    p = ChainParams(L=9, J0=1.0, Delta=20.0)
    evals, evecs = static_magnon_hamiltonian(p, basis).eigh()
    return basis, evals, evecs


@pytest.fixture(scope="module")
def small_noninteracting():
    p = ChainParams.resonant_drive(L=9, J0=1.0, J1=0.01, Delta=0.0, omega=8.0)
    n1 = floquet_spectrum(p, build_basis(9, 1), steps=256)
    n2 = floquet_spectrum(p, build_basis(9, 2), steps=256)
    return p, n1, n2


class TestInteractingBands:
    def test_band_census(self, small_interacting):
        basis, evals, evecs = small_interacting
        labels = classify_interacting_bands(evals, evecs, basis, 20.0, 1.0)
        counts = collections.Counter(l.label for l in labels)
        assert counts[InteractingBand.BOUND_PAIR] == 6
        assert counts[InteractingBand.BOUND_MAGNON_EDGE] == 2
        assert counts[InteractingBand.INDEPENDENT] == 15
        assert counts[InteractingBand.ONE_MAGNON_EDGE] == 12
        assert counts[InteractingBand.TWO_MAGNON_EDGE] == 1
        assert counts[InteractingBand.UNCLASSIFIED] == 0

    def test_every_state_labeled_once(self, small_interacting):
        basis, evals, evecs = small_interacting
        labels = classify_interacting_bands(evals, evecs, basis, 20.0, 1.0)
        assert [l.index for l in labels] == list(range(basis.dim))

    def test_two_magnon_edge_state_diagnostics(self, small_interacting):
        basis, evals, evecs = small_interacting
        labels = classify_interacting_bands(evals, evecs, basis, 20.0, 1.0)
        v = [l for l in labels if l.label is InteractingBand.TWO_MAGNON_EDGE]
        assert len(v) == 1
        assert v[0].left_weight > 0.9 and v[0].right_weight > 0.9
        assert v[0].energy == pytest.approx(-20.0, abs=0.1)

    def test_degenerate_windows_go_unclassified(self, small_interacting):
        basis, evals, evecs = small_interacting
        labels = classify_interacting_bands(evals, evecs, basis, 0.0, 1.0)
        assert all(l.label is InteractingBand.UNCLASSIFIED for l in labels)

    def test_window_cap_option(self, small_interacting):
        basis, evals, evecs = small_interacting
        opts = ClassifyOptions(window_half_width=1e-9)
        labels = classify_interacting_bands(evals, evecs, basis, 20.0, 1.0, opts)
        # windows shrink to points: only accidental exact hits remain
        assert sum(l.label is not InteractingBand.UNCLASSIFIED for l in labels) == 0

    def test_shape_and_sector_validation(self, small_interacting):
        basis, evals, evecs = small_interacting
        with pytest.raises(ValueError):
            classify_interacting_bands(evals, evecs[:, :-1], basis, 20.0, 1.0)
        with pytest.raises(ValueError):
            classify_interacting_bands(evals, evecs, build_basis(9, 1), 20.0, 1.0)


class TestNoninteractingTypes:
    def test_type_census(self, small_noninteracting):
        p, n1, n2 = small_noninteracting
        d = single_magnon_defect_energies(n1)
        labels = classify_noninteracting(n2, d.left, d.right, p.J1)
        counts = collections.Counter(l.label for l in labels)
        assert counts[CombinationType.LEFT_EDGE_PLUS_EXTENDED] == 7
        assert counts[CombinationType.RIGHT_EDGE_PLUS_EXTENDED] == 7
        assert counts[CombinationType.BOTH_EDGES] == 1
        assert counts[CombinationType.BOTH_EXTENDED] == 21
        assert not any(l.ambiguous for l in labels)

    def test_both_edges_state_is_ipr_peak(self, small_noninteracting):
        p, n1, n2 = small_noninteracting
        d = single_magnon_defect_energies(n1)
        labels = classify_noninteracting(n2, d.left, d.right, p.J1)
        iii = [l for l in labels if l.label is CombinationType.BOTH_EDGES]
        assert len(iii) == 1
        assert iii[0].ipr == pytest.approx(n2.iprs.max())
        assert abs(iii[0].energy - (d.left + d.right)) < 1e-3

    def test_swapped_defect_energies_flag_ambiguity(self, small_noninteracting):
        p, n1, n2 = small_noninteracting
        d = single_magnon_defect_energies(n1)
        labels = classify_noninteracting(n2, d.right, d.left, p.J1)
        single_edge = [
            l
            for l in labels
            if l.label
            in (CombinationType.LEFT_EDGE_PLUS_EXTENDED, CombinationType.RIGHT_EDGE_PLUS_EXTENDED)
        ]
        assert all(l.ambiguous for l in single_edge)

    def test_requires_two_magnon_sector(self, small_noninteracting):
        p, n1, _ = small_noninteracting
        with pytest.raises(ValueError):
            classify_noninteracting(n1, -0.03, 0.03, p.J1)


class TestDefectEnergies:
    def test_left_negative_right_positive(self, small_noninteracting):
        p, n1, _ = small_noninteracting
        d = single_magnon_defect_energies(n1)
        assert d.left < 0 < d.right
        assert d.left == pytest.approx(-p.Delta1, abs=2e-4)
        assert d.right == pytest.approx(+p.Delta1, abs=2e-4)

    def test_rejects_two_magnon_spectrum(self, small_noninteracting):
        _, _, n2 = small_noninteracting
        with pytest.raises(ValueError):
            single_magnon_defect_energies(n2)


def synthetic_spectrum(energies, iprs):
    dim = len(energies)
    basis = build_basis(dim, 1)
    return FloquetSpectrum(
        basis=basis,
        omega=8.0,
        quasienergies=np.asarray(energies, dtype=float),
        states=np.eye(dim, dtype=complex),
        iprs=np.asarray(iprs, dtype=float),
    )


class TestDetectEicBeic:
    def test_picks_outliers_inside_window(self):
        spec = synthetic_spectrum(
            [-0.5, -0.005, 0.0, 0.004, 0.3], [0.9, 0.01, 0.5, 0.012, 0.8]
        )
        found = detect_eic_beic(spec, (-0.01, 0.01), ipr_threshold=10.0)
        assert found == [EicState(index=2, quasienergy=0.0, ipr=0.5)]

    def test_empty_window(self):
        spec = synthetic_spectrum([0.0, 0.1], [0.5, 0.5])
        assert detect_eic_beic(spec, (0.2, 0.1)) == []
        assert detect_eic_beic(spec, (5.0, 6.0)) == []

    def test_no_outliers(self):
        spec = synthetic_spectrum([-0.001, 0.0, 0.001], [0.01, 0.012, 0.011])
        assert detect_eic_beic(spec, (-0.01, 0.01)) == []

    def test_threshold_tunable(self):
        spec = synthetic_spectrum([-0.001, 0.0, 0.001], [0.01, 0.03, 0.011])
        assert detect_eic_beic(spec, (-0.01, 0.01), ipr_threshold=10.0) == []
        found = detect_eic_beic(spec, (-0.01, 0.01), ipr_threshold=2.0)
        assert [s.index for s in found] == [1]
