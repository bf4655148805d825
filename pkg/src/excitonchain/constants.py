"""Physical constants and unit conversions.

All internal computation is strict SI. The CODATA 2018 values below are
pinned (rather than imported from scipy.constants) so that serialized
outputs and golden files stay stable across library versions; run
manifests record them explicitly.
"""

from __future__ import annotations

import math

HBAR = 1.054571817e-34      # reduced Planck constant [J s]
C_LIGHT = 299792458.0       # speed of light in vacuum [m/s]
EPSILON_0 = 8.8541878128e-12  # vacuum permittivity [F/m]
E_CHARGE = 1.602176634e-19  # elementary charge [C]

# Unit conversions accepted at the configuration boundary.
EV = E_CHARGE               # J per eV
ANGSTROM = 1.0e-10          # m per angstrom
E_ANGSTROM = E_CHARGE * ANGSTROM  # C m per (elementary charge x angstrom)

# Dipole orientation where the axial dipole-dipole coupling changes sign,
# arccos(1/sqrt(3)) ~ 54.7 deg.
MAGIC_ANGLE = math.acos(1.0 / math.sqrt(3.0))


def constants_dict() -> dict[str, float]:
    """Pinned constants, recorded in every run manifest."""
    return {
        "hbar_js": HBAR,
        "c_m_per_s": C_LIGHT,
        "epsilon0_f_per_m": EPSILON_0,
        "elementary_charge_c": E_CHARGE,
    }
