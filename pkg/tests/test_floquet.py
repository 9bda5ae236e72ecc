import numpy as np
import pytest

from magnonchain.core import ChainParams, StateVector, build_basis
from magnonchain.dynamics import evolve_driven
from magnonchain.floquet import (
    BranchCutWarning,
    FloquetSpectrum,
    UnitaryPropagator,
    floquet_hamiltonian,
    floquet_spectrum,
    one_period_propagator,
    quasienergy_spectrum,
    stroboscopic_evolve,
)
from magnonchain.hamiltonians import (
    HermitianOperator,
    expm_hermitian,
    lab_frame_hamiltonian,
    static_magnon_hamiltonian,
)


def generic_params(L=5):
    return ChainParams.resonant_drive(L=L, J0=1.0, J1=0.3, Delta=1.0, omega=6.0)


class TestOnePeriodPropagator:
    def test_zero_couplings_give_identity(self):
        p = ChainParams.resonant_drive(L=4, J0=0.0, J1=0.0, Delta=0.0, omega=8.0)
        U = one_period_propagator(p, build_basis(4, 2), steps=16)
        np.testing.assert_allclose(U.matrix, np.eye(6), atol=1e-13)

    def test_requires_resonance(self):
        p = ChainParams(L=4, J0=1.0, J1=0.1, B=7.0, omega=8.0)
        with pytest.raises(ValueError):
            one_period_propagator(p, build_basis(4, 1))

    def test_rejects_zero_steps(self):
        with pytest.raises(ValueError):
            one_period_propagator(generic_params(), build_basis(5, 1), steps=0)

    def test_rejects_basis_mismatch(self):
        with pytest.raises(ValueError):
            one_period_propagator(generic_params(5), build_basis(6, 1))

    def test_unitary_at_default_steps(self):
        U = one_period_propagator(generic_params(), build_basis(5, 2))
        gram = U.matrix.conj().T @ U.matrix
        assert np.abs(gram - np.eye(U.dim)).max() < 1e-12

    def test_step_doubling_is_second_order(self):
        p = generic_params()
        basis = build_basis(5, 2)
        ref = one_period_propagator(p, basis, steps=8192).matrix
        errs = {s: np.abs(one_period_propagator(p, basis, steps=s).matrix - ref).max()
                for s in (64, 128, 256)}
        assert 3.5 < errs[64] / errs[128] < 4.5
        assert 3.5 < errs[128] / errs[256] < 4.5

    def test_undriven_resonant_case_matches_folded_tilted_spectrum(self):
        # with J1 = 0 the lab frame is time-independent, so quasienergies
        # are its eigenvalues folded into the fundamental zone
        p = ChainParams.resonant_drive(L=7, J0=1.0, J1=0.0, Delta=2.0, omega=8.0)
        basis = build_basis(7, 2)
        spec = floquet_spectrum(p, basis, steps=256)
        evals = np.linalg.eigvalsh(lab_frame_hamiltonian(0.0, p, basis).matrix)
        w = p.omega
        folded = np.sort(((evals + w / 2) % w) - w / 2)
        assert np.abs(folded - spec.quasienergies).max() < 1e-5


class TestUnitaryPropagatorType:
    def test_rejects_non_unitary(self):
        basis = build_basis(3, 1)
        with pytest.raises(ValueError):
            UnitaryPropagator(basis=basis, matrix=0.5 * np.eye(3), period=1.0)

    def test_rejects_bad_period(self):
        basis = build_basis(3, 1)
        with pytest.raises(ValueError):
            UnitaryPropagator(basis=basis, matrix=np.eye(3), period=0.0)

    def test_omega_from_period(self):
        basis = build_basis(3, 1)
        U = UnitaryPropagator(basis=basis, matrix=np.eye(3), period=np.pi)
        assert U.omega == pytest.approx(2.0)


class TestFloquetHamiltonian:
    def test_identity_gives_zero(self):
        basis = build_basis(4, 1)
        U = UnitaryPropagator(basis=basis, matrix=np.eye(4), period=0.7)
        H_F = floquet_hamiltonian(U)
        np.testing.assert_allclose(H_F.matrix, 0.0, atol=1e-12)
        assert H_F.period == 0.7

    def test_inverts_static_exponential(self):
        # ||H||*T < pi keeps everything on the principal branch
        p = ChainParams(L=4, J0=1.0, Delta=0.5)
        basis = build_basis(4, 1)
        H = static_magnon_hamiltonian(p, basis)
        T = 0.5
        U = UnitaryPropagator(basis=basis, matrix=expm_hermitian(H.matrix, T), period=T)
        np.testing.assert_allclose(floquet_hamiltonian(U).matrix, H.matrix, atol=1e-8)

    def test_round_trip_through_logarithm(self):
        U = one_period_propagator(generic_params(), build_basis(5, 2), steps=256)
        H_F = floquet_hamiltonian(U)
        np.testing.assert_allclose(
            expm_hermitian(H_F.matrix, U.period), U.matrix, atol=1e-8
        )

    def test_branch_cut_flagged(self):
        basis = build_basis(3, 1)
        U = UnitaryPropagator(
            basis=basis, matrix=np.diag(np.exp(1j * np.array([np.pi, 0.3, -0.5]))), period=1.0
        )
        with pytest.warns(BranchCutWarning):
            H_F = floquet_hamiltonian(U)
        assert H_F.branch_cut_flagged

    def test_degenerate_eigenphases_yield_orthonormal_frame(self):
        basis = build_basis(4, 1)
        # two exactly degenerate eigenphases
        U = UnitaryPropagator(
            basis=basis, matrix=np.diag(np.exp(1j * np.array([0.4, 0.4, -0.2, 1.1]))), period=1.0
        )
        H_F = floquet_hamiltonian(U)
        spec = quasienergy_spectrum(H_F)
        gram = spec.states.conj().T @ spec.states
        np.testing.assert_allclose(gram, np.eye(4), atol=1e-10)


class TestQuasienergySpectrum:
    def test_requires_period_metadata(self):
        p = ChainParams(L=4, J0=1.0, Delta=0.5)
        H = static_magnon_hamiltonian(p, build_basis(4, 1))
        with pytest.raises(ValueError):
            quasienergy_spectrum(H)

    def test_rejects_out_of_zone_spectrum(self):
        basis = build_basis(2, 1)
        T = 1.0  # omega = 2*pi, zone edge at pi
        H = HermitianOperator(basis=basis, matrix=np.diag([0.0, 10.0]), period=T)
        with pytest.raises(ValueError):
            quasienergy_spectrum(H)

    def test_dimension_one(self):
        basis = build_basis(1, 1)
        H = HermitianOperator(basis=basis, matrix=np.array([[0.3]]), period=1.0)
        spec = quasienergy_spectrum(H)
        assert spec.quasienergies == pytest.approx([0.3])
        assert spec.iprs == pytest.approx([1.0])

    def test_sorted_in_zone_orthonormal(self):
        spec = floquet_spectrum(generic_params(), build_basis(5, 2), steps=256)
        E = spec.quasienergies
        assert np.all(np.diff(E) >= 0)
        assert E[0] >= -spec.zone_half_width and E[-1] < spec.zone_half_width
        gram = spec.states.conj().T @ spec.states
        np.testing.assert_allclose(gram, np.eye(spec.dim), atol=1e-12)
        assert spec.iprs.shape == E.shape

    def test_time_origin_shift_leaves_spectrum(self):
        p = generic_params()
        basis = build_basis(5, 2)
        a = floquet_spectrum(p, basis, steps=256)
        b = floquet_spectrum(p, basis, steps=256, t0=p.period / 4)
        assert np.abs(a.quasienergies - b.quasienergies).max() < 1e-10

    def test_single_magnon_defect_levels_split_off(self):
        # two isolated levels at roughly +-Delta1, symmetric about zero
        p = ChainParams.resonant_drive(L=21, J0=1.0, J1=0.01, Delta=0.0, omega=8.0)
        spec = floquet_spectrum(p, build_basis(21, 1), steps=256)
        E = spec.quasienergies
        isolated = E[np.abs(E) > 0.75 * p.J1]
        assert isolated.size == 2
        assert isolated[0] < 0 < isolated[1]
        assert abs(isolated[0] + isolated[1]) < 1e-9
        assert abs(isolated[1] - p.Delta1) < 2e-4


class TestStroboscopicEvolve:
    def test_zero_cycles(self):
        basis = build_basis(5, 1)
        U = one_period_propagator(generic_params(), basis, steps=32)
        psi = StateVector.single_magnon_at(basis, 2)
        traj = stroboscopic_evolve(U, psi, 0)
        assert len(traj) == 1
        np.testing.assert_array_equal(traj.amps[0], psi.amps)

    def test_matches_driven_evolution_at_period_marks(self):
        p = generic_params()
        basis = build_basis(5, 2)
        U = one_period_propagator(p, basis, steps=256)
        psi = StateVector.magnon_pair_at(basis, 2, 4)
        strobe = stroboscopic_evolve(U, psi, 3)
        T = p.period
        driven = evolve_driven(p, basis, psi, np.arange(4) * T, frame="rotating", dt=T / 256)
        np.testing.assert_allclose(strobe.amps, driven.amps, atol=1e-10)

    def test_norm_preserved_over_many_cycles(self):
        basis = build_basis(5, 2)
        U = one_period_propagator(generic_params(), basis, steps=64)
        traj = stroboscopic_evolve(U, StateVector.uniform(basis), 500, record_every=50)
        assert np.abs(traj.norms() - 1.0).max() < 1e-8

    def test_basis_mismatch(self):
        U = one_period_propagator(generic_params(), build_basis(5, 1), steps=8)
        with pytest.raises(ValueError):
            stroboscopic_evolve(U, StateVector.uniform(build_basis(5, 2)), 2)

    def test_record_every(self):
        basis = build_basis(4, 1)
        p = ChainParams.resonant_drive(L=4, J0=1.0, J1=0.1, omega=8.0)
        U = one_period_propagator(p, basis, steps=16)
        traj = stroboscopic_evolve(U, StateVector.single_magnon_at(basis, 1), 5, record_every=2)
        np.testing.assert_allclose(traj.times / p.period, [0, 2, 4, 5])

    def test_rejects_negative_cycles(self):
        basis = build_basis(4, 1)
        p = ChainParams.resonant_drive(L=4, J0=1.0, J1=0.1, omega=8.0)
        U = one_period_propagator(p, basis, steps=8)
        with pytest.raises(ValueError):
            stroboscopic_evolve(U, StateVector.single_magnon_at(basis, 1), -1)
