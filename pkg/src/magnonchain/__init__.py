"""Magnon physics on finite spin chains: spectra, Floquet drives, effective
models, dynamics, and a service/CLI layer around them."""

__version__ = "0.1.0"

from .classify import (
    ClassifyOptions,
    CombinationType,
    EdgeDefectEnergies,
    EicState,
    InteractingBand,
    StateLabel,
    classify_interacting_bands,
    classify_noninteracting,
    detect_eic_beic,
    single_magnon_defect_energies,
)
from .core import (
    ChainParams,
    DerivedCouplings,
    MagnonBasis,
    StateVector,
    build_basis,
    derived_couplings,
)
from .dynamics import Trajectory, evolve_driven, evolve_static
from .effective import (
    ValidityWarning,
    WannierZeemanDefects,
    effective_single,
    effective_two,
    spectral_deviation,
    wannier_zeeman_defects,
)
from .floquet import (
    BranchCutWarning,
    FloquetSpectrum,
    UnitaryPropagator,
    floquet_hamiltonian,
    floquet_spectrum,
    one_period_propagator,
    quasienergy_spectrum,
    stroboscopic_evolve,
)
from .hamiltonians import (
    HermitianOperator,
    coupling_at,
    gauge_phases,
    lab_frame_hamiltonian,
    rotating_frame_hamiltonian,
    static_magnon_hamiltonian,
)
from .observables import (
    CorrelationMatrix,
    ipr,
    magnetization,
    density,
    spin_correlation,
    two_magnon_correlation,
)

__all__ = [
    "__version__",
    "ChainParams",
    "DerivedCouplings",
    "MagnonBasis",
    "StateVector",
    "build_basis",
    "derived_couplings",
    "HermitianOperator",
    "coupling_at",
    "gauge_phases",
    "lab_frame_hamiltonian",
    "rotating_frame_hamiltonian",
    "static_magnon_hamiltonian",
    "CorrelationMatrix",
    "ipr",
    "magnetization",
    "density",
    "spin_correlation",
    "two_magnon_correlation",
    "Trajectory",
    "evolve_static",
    "evolve_driven",
    "BranchCutWarning",
    "UnitaryPropagator",
    "FloquetSpectrum",
    "one_period_propagator",
    "floquet_hamiltonian",
    "quasienergy_spectrum",
    "floquet_spectrum",
    "stroboscopic_evolve",
    "ValidityWarning",
    "WannierZeemanDefects",
    "effective_single",
    "effective_two",
    "wannier_zeeman_defects",
    "spectral_deviation",
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
