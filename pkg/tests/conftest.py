"""Shared fixtures.

The two session-scoped Floquet spectra below are the expensive inputs
(a few seconds each: 256 midpoint steps on the 210-dimensional
two-magnon sector) reused across the acceptance checks.
"""

import pytest

from magnonchain import ChainParams, build_basis, floquet_spectrum


@pytest.fixture(scope="session")
def weak_drive_setup():
    """Driven noninteracting chain, L=21, J1=0.01, omega=B=8: parameters
    plus the one- and two-magnon Floquet spectra."""
    params = ChainParams.resonant_drive(21, J0=1.0, J1=0.01, Delta=0.0, omega=8.0)
    one = floquet_spectrum(params, build_basis(21, 1), steps=256)
    two = floquet_spectrum(params, build_basis(21, 2), steps=256)
    return params, one, two


@pytest.fixture(scope="session")
def interacting_drive_setup():
    """Weakly interacting driven chain, L=21, J1=0.1, Delta=0.1,
    omega=B=8: parameters plus the two-magnon Floquet spectrum."""
    params = ChainParams.resonant_drive(21, J0=1.0, J1=0.1, Delta=0.1, omega=8.0)
    two = floquet_spectrum(params, build_basis(21, 2), steps=256)
    return params, two
