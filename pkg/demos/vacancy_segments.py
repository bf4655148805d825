"""A long lattice with random vacancies, decomposed into emitting segments.

Half-filled Mott-style occupancy is drawn at random; each maximal run of
occupied sites becomes an independent superradiant emitter. The script
reports the segment statistics and which segment pairs could exchange
excitation resonantly (equal lengths) versus being blocked by their
collective energy mismatch.
"""

import warnings

import numpy as np

from excitonchain import (
    E_ANGSTROM,
    EV,
    LatticeParams,
    Resonance,
    ResonantNeighborsWarning,
    decompose,
    segment_coupling,
    single_atom_rate,
    transfer_resonance,
)
from excitonchain.constants import HBAR

params = LatticeParams(
    lattice_const=1000e-10,
    atom_energy=1.0 * EV,
    dipole_mag=1.0 * E_ANGSTROM,
    dipole_angle=0.0,
)

rng = np.random.default_rng(7)
occupancy = rng.random(60) < 0.7
with warnings.catch_warnings():
    warnings.simplefilter("ignore", ResonantNeighborsWarning)
    layout = decompose(occupancy.tolist(), params)

print("occupancy:", "".join("1" if b else "0" for b in occupancy))
print(f"{len(layout.segments)} segments\n")
print(f"{'#':>3} {'sites':>6} {'center [a]':>11} {'E_i-E_A [J]':>13} "
      f"{'Gamma_i/Gamma_A':>16}")
gamma_atom = single_atom_rate(params)
for i, seg in enumerate(layout.segments, start=1):
    mode = seg.superradiant
    print(f"{i:>3} {seg.n_sites:>6} "
          f"{seg.center[0] / params.lattice_const:>11.1f} "
          f"{mode.energy - params.atom_energy:>13.3e} "
          f"{mode.gamma / gamma_atom:>16.3f}")

print("\nnearest-pair transfer diagnostics:")
for left, right in zip(layout.segments, layout.segments[1:]):
    verdict = transfer_resonance(left, right)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # close pairs flag the point-dipole form
        coupling = segment_coupling(left, right)
    gap = abs(left.superradiant.energy - right.superradiant.energy)
    width = HBAR * max(left.superradiant.gamma, right.superradiant.gamma)
    marker = "<-- transfer allowed" if verdict is Resonance.RESONANT else ""
    print(f"  N={left.n_sites:>2} | N={right.n_sites:>2}:  "
          f"J_ab = {coupling:+.3e} J, gap/linewidth = "
          f"{gap / width if width else float('inf'):9.2f}  "
          f"{verdict.value:>8} {marker}")
