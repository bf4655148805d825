"""Fast internal invariant suite behind the CLI --check flag."""

from __future__ import annotations

import math

import numpy as np

from .constants import C_LIGHT, EPSILON_0, MAGIC_ANGLE
from .emission import ObservationPoint
from .segments import InitialState, intensity_trace
from .spectrum import (
    ChainSpec,
    LatticeParams,
    collective_dipole,
    damping_rate,
    hopping_energy,
    mode_energy,
    numeric_diagonalize,
    profile_vector,
    single_atom_rate,
)
from .two_segment import two_segment_exact, worked_example_layout

__all__ = ["run_selfcheck"]

_PARAMS = LatticeParams(
    lattice_const=1.0e-7,
    atom_energy=1.602176634e-19,
    dipole_mag=1.602176634e-29,
    dipole_angle=0.0,
)


def _chain(n: int, angle: float = 0.0) -> ChainSpec:
    return ChainSpec(
        lattice_const=_PARAMS.lattice_const,
        atom_energy=_PARAMS.atom_energy,
        dipole_mag=_PARAMS.dipole_mag,
        dipole_angle=angle,
        n_sites=n,
    )


def _check_sum_rule() -> bool:
    spec = _chain(25)
    total = sum(
        np.dot(collective_dipole(spec, k), collective_dipole(spec, k))
        for k in range(1, 26)
    )
    return abs(total / (25 * spec.dipole_mag**2) - 1.0) < 1e-12


def _check_orthonormality() -> bool:
    spec = _chain(12)
    vecs = np.column_stack([profile_vector(spec, k) for k in range(1, 13)])
    return np.max(np.abs(vecs.T @ vecs - np.eye(12))) < 1e-12


def _check_magic_angle() -> bool:
    params = LatticeParams(
        lattice_const=_PARAMS.lattice_const,
        atom_energy=_PARAMS.atom_energy,
        dipole_mag=_PARAMS.dipole_mag,
        dipole_angle=MAGIC_ANGLE,
    )
    scale = params.dipole_mag**2 / (4 * math.pi * EPSILON_0 * params.lattice_const**3)
    return abs(hopping_energy(params)) < 1e-12 * scale


def _check_numeric_oracle() -> bool:
    spec = _chain(8, angle=math.pi / 4)
    pairs = numeric_diagonalize(spec)
    j = hopping_energy(spec)
    order = sorted(range(1, 9),
                   key=lambda k: 2 * j * math.cos(math.pi * k / 9))
    for (energy, vec), k in zip(pairs, order):
        if abs(energy - mode_energy(spec, k)) > 1e-10 * spec.atom_energy:
            return False
        if np.max(np.abs(vec - profile_vector(spec, k))) > 1e-10:
            return False
    return True


def _check_single_atom() -> bool:
    spec = _chain(1)
    return abs(damping_rate(spec, 1) / single_atom_rate(spec) - 1.0) < 1e-12


def _check_two_paths() -> bool:
    layout = worked_example_layout(_PARAMS)
    obs = ObservationPoint(np.array([0.0, 0.0, 100 * _PARAMS.lattice_const]))
    gamma = single_atom_rate(_PARAMS)
    times = float(np.linalg.norm(obs.position)) / C_LIGHT + np.linspace(
        0.0, 5.0 / gamma, 5
    )
    state = InitialState.symmetric_pair(2, 0, 1)
    engine = intensity_trace(layout, state, obs, times).total
    closed = two_segment_exact(_PARAMS, obs, times).symmetric_total
    return bool(np.max(np.abs(engine - closed) / np.abs(engine)) < 1e-10)


_CHECKS = [
    ("dipole sum rule (N=25)", _check_sum_rule),
    ("profile orthonormality (N=12)", _check_orthonormality),
    ("magic-angle coupling zero", _check_magic_angle),
    ("numeric eigen oracle (N=8)", _check_numeric_oracle),
    ("single-atom rate reduction", _check_single_atom),
    ("two-segment path equivalence", _check_two_paths),
]


def run_selfcheck(verbose: bool = True) -> bool:
    """Run the invariant suite; prints one line per check."""
    ok = True
    for name, check in _CHECKS:
        passed = check()
        ok &= passed
        if verbose:
            print(f"[{'PASS' if passed else 'FAIL'}] {name}")
    return ok
