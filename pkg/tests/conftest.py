import numpy as np
import pytest

from excitonchain import ChainSpec, E_ANGSTROM, EV, LatticeParams


@pytest.fixture
def params() -> LatticeParams:
    """Baseline lattice: 1 eV transition, 1000 A spacing, 1 e*A dipole
    along the chain axis."""
    return LatticeParams(
        lattice_const=1000e-10,
        atom_energy=1.0 * EV,
        dipole_mag=1.0 * E_ANGSTROM,
        dipole_angle=0.0,
    )


@pytest.fixture
def make_chain(params):
    def _make(n_sites: int, dipole_angle: float | None = None) -> ChainSpec:
        return ChainSpec(
            lattice_const=params.lattice_const,
            atom_energy=params.atom_energy,
            dipole_mag=params.dipole_mag,
            dipole_angle=params.dipole_angle
            if dipole_angle is None
            else dipole_angle,
            n_sites=n_sites,
        )

    return _make


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
