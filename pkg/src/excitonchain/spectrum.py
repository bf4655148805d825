"""Collective excitation modes of a finite chain of two-level atoms.

A single electronic excitation hops between nearest-neighbor sites with
transfer energy J set by the resonance dipole-dipole interaction. With
fixed (vanishing) boundary conditions at ghost sites n=0 and n=N+1 the
hopping Hamiltonian is diagonalized by a sine transform; the resulting
standing-wave modes split into bright (odd k, nonzero collective dipole)
and dark (even k) families, the nodeless k=1 mode being superradiant.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg

from .constants import C_LIGHT, EPSILON_0, HBAR

__all__ = [
    "LatticeParams",
    "ChainSpec",
    "CollectiveMode",
    "Parity",
    "LongChainWarning",
    "hopping_energy",
    "mode_energy",
    "mode_profile",
    "profile_vector",
    "collective_dipole",
    "single_atom_rate",
    "damping_rate",
    "numeric_diagonalize",
    "all_modes",
]

# |dipole|/mu below this classifies a mode as dark; the analytic value is an
# exact zero, the tolerance only guards float noise.
DARK_TOLERANCE = 1.0e-12


class LongChainWarning(UserWarning):
    """Chain longer than the transition wavelength; the collective decay
    rate formula is a small-sample approximation there."""


class Parity(str, Enum):
    BRIGHT = "bright"
    DARK = "dark"


@dataclass(frozen=True)
class LatticeParams:
    """Per-atom parameters shared by every chain on the same lattice.

    Attributes
    ----------
    lattice_const : float
        Site spacing a [m].
    atom_energy : float
        Bare two-level transition energy [J].
    dipole_mag : float
        Magnitude of the transition dipole [C m].
    dipole_angle : float
        Angle between the dipole and the chain axis [rad], in [0, pi/2]
        (symmetry reduces the physical range).
    """

    lattice_const: float
    atom_energy: float
    dipole_mag: float
    dipole_angle: float

    def __post_init__(self) -> None:
        if not self.lattice_const > 0.0:
            raise ValueError("lattice_const must be positive")
        if not self.atom_energy > 0.0:
            raise ValueError("atom_energy must be positive")
        if self.dipole_mag < 0.0:
            raise ValueError("dipole_mag must be non-negative")
        if not 0.0 <= self.dipole_angle <= math.pi / 2.0 + 1e-15:
            raise ValueError("dipole_angle must lie in [0, pi/2]")

    @property
    def dipole_direction(self) -> np.ndarray:
        """Unit vector of the transition dipole, in the x-z plane."""
        return np.array(
            [math.cos(self.dipole_angle), 0.0, math.sin(self.dipole_angle)]
        )

    @property
    def transition_wavelength(self) -> float:
        """Free-space wavelength of the bare atomic transition [m]."""
        return 2.0 * math.pi * HBAR * C_LIGHT / self.atom_energy


@dataclass(frozen=True)
class ChainSpec(LatticeParams):
    """A contiguous chain of ``n_sites`` atoms, one atom per site.

    The chain length L = a (N+1) includes the two empty ghost sites that
    impose the fixed boundary condition.
    """

    n_sites: int = 1

    def __post_init__(self) -> None:
        super().__post_init__()
        if not isinstance(self.n_sites, (int, np.integer)) or self.n_sites < 1:
            raise ValueError("n_sites must be an integer >= 1")

    @property
    def length(self) -> float:
        """Chain length L = a (N+1) [m]."""
        return self.lattice_const * (self.n_sites + 1)


@dataclass(frozen=True)
class CollectiveMode:
    """One standing-wave mode of a chain.

    Attributes
    ----------
    k : int
        Mode index, 1..N (1-based throughout).
    energy : float
        Mode energy [J].
    dipole_vec : np.ndarray
        Collective transition dipole [C m]; zero for dark modes.
    gamma : float
        Radiative damping rate [1/s]; zero for dark modes.
    parity : Parity
        Bright (odd k) or dark (even k).
    """

    k: int
    energy: float
    dipole_vec: np.ndarray
    gamma: float
    parity: Parity


def hopping_energy(params: LatticeParams) -> float:
    """Nearest-neighbor excitation transfer energy [J].

    J = mu^2 (1 - 3 cos^2 theta) / (4 pi eps0 a^3). Negative below the
    magic angle (head-to-tail dominated), zero at arccos(1/sqrt(3)),
    positive for perpendicular dipoles.
    """
    geom = 1.0 - 3.0 * math.cos(params.dipole_angle) ** 2
    return params.dipole_mag**2 / (4.0 * math.pi * EPSILON_0 * params.lattice_const**3) * geom


def _check_mode_index(spec: ChainSpec, k: int) -> None:
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= spec.n_sites:
        raise ValueError(f"mode index k={k} outside 1..{spec.n_sites}")


def mode_energy(spec: ChainSpec, k: int) -> float:
    """Energy of mode k: E_A + 2 J cos(pi k / (N+1)) [J]."""
    _check_mode_index(spec, k)
    j = hopping_energy(spec)
    return spec.atom_energy + 2.0 * j * math.cos(math.pi * k / (spec.n_sites + 1))


def mode_profile(spec: ChainSpec, k: int, n: int) -> float:
    """Amplitude of mode k at site n: sqrt(2/(N+1)) sin(pi n k / (N+1)).

    Site indices 0 and N+1 address the ghost sites where the standing
    wave vanishes; they are accepted as inputs.
    """
    _check_mode_index(spec, k)
    if not isinstance(n, (int, np.integer)) or not 0 <= n <= spec.n_sites + 1:
        raise ValueError(f"site index n={n} outside 0..{spec.n_sites + 1}")
    m = spec.n_sites + 1
    return math.sqrt(2.0 / m) * math.sin(math.pi * n * k / m)


def profile_vector(spec: ChainSpec, k: int) -> np.ndarray:
    """Mode profile over the occupied sites n = 1..N, as an array."""
    _check_mode_index(spec, k)
    m = spec.n_sites + 1
    n = np.arange(1, spec.n_sites + 1)
    return np.sqrt(2.0 / m) * np.sin(np.pi * n * k / m)


def collective_dipole(spec: ChainSpec, k: int) -> np.ndarray:
    """Collective transition dipole vector of mode k [C m].

    The site sum of the profile gives sqrt(2/(N+1)) cot(pi k / (2(N+1)))
    for odd k and vanishes for even k: even modes are dark.
    """
    _check_mode_index(spec, k)
    if k % 2 == 0:
        return np.zeros(3)
    m = spec.n_sites + 1
    mag = spec.dipole_mag * math.sqrt(2.0 / m) / math.tan(math.pi * k / (2.0 * m))
    return mag * spec.dipole_direction


def single_atom_rate(params: LatticeParams) -> float:
    """Spontaneous emission rate of one isolated atom [1/s]:
    mu^2 E_A^3 / (3 pi eps0 hbar^4 c^3)."""
    return params.dipole_mag**2 * params.atom_energy**3 / (
        3.0 * math.pi * EPSILON_0 * HBAR**4 * C_LIGHT**3
    )


def damping_rate(spec: ChainSpec, k: int) -> float:
    """Radiative damping rate of mode k [1/s]; exactly zero for dark modes.

    Valid when the chain is shorter than the transition wavelength; a
    ``LongChainWarning`` is emitted (not raised) beyond that.
    """
    _check_mode_index(spec, k)
    if spec.length > spec.transition_wavelength:
        warnings.warn(
            f"chain length {spec.length:.3e} m exceeds the transition wavelength "
            f"{spec.transition_wavelength:.3e} m; collective rate is approximate",
            LongChainWarning,
            stacklevel=2,
        )
    if k % 2 == 0:
        return 0.0
    e_k = mode_energy(spec, k)
    ratio = 2.0 * spec.lattice_const / spec.length
    cot = 1.0 / math.tan(math.pi * k * spec.lattice_const / (2.0 * spec.length))
    return spec.dipole_mag**2 * e_k**3 / (
        3.0 * math.pi * EPSILON_0 * HBAR**4 * C_LIGHT**3
    ) * ratio * cot**2


def numeric_diagonalize(spec: ChainSpec) -> list[tuple[float, np.ndarray]]:
    """Eigenpairs of the N x N tridiagonal hopping matrix, as a numeric
    cross-check of the sine-transform results.

    The matrix (diagonal E_A, off-diagonal J) is diagonalized as
    E_A I + J S with S the 0/1 adjacency band; the shift is exact and
    keeps the eigenvectors well conditioned even for |J| << E_A.
    Returns pairs sorted ascending by energy, eigenvectors normalized
    with the first non-negligible component positive.
    """
    n = spec.n_sites
    j = hopping_energy(spec)
    if n == 1:
        return [(spec.atom_energy, np.array([1.0]))]
    shifts, vecs = scipy.linalg.eigh_tridiagonal(np.zeros(n), np.full(n - 1, j))
    out: list[tuple[float, np.ndarray]] = []
    for idx in np.argsort(shifts, kind="stable"):
        v = vecs[:, idx]
        lead = np.flatnonzero(np.abs(v) > 1e-12 * np.abs(v).max())[0]
        if v[lead] < 0.0:
            v = -v
        out.append((spec.atom_energy + shifts[idx], v))
    return out


def all_modes(spec: ChainSpec) -> list[CollectiveMode]:
    """All N collective modes of the chain, k = 1..N."""
    modes = []
    for k in range(1, spec.n_sites + 1):
        dip = collective_dipole(spec, k)
        parity = (
            Parity.DARK
            if np.linalg.norm(dip) <= DARK_TOLERANCE * spec.dipole_mag
            else Parity.BRIGHT
        )
        modes.append(
            CollectiveMode(
                k=k,
                energy=mode_energy(spec, k),
                dipole_vec=dip,
                gamma=damping_rate(spec, k),
                parity=parity,
            )
        )
    return modes
