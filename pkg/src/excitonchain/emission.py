"""Far-field emission of a single chain.

Each bright mode radiates like a point dipole placed at the chain center,
with the bare dipole replaced by the collective one: a sin^2(phi) lobe
around the dipole axis, 1/r^2 falloff, and an exponential decay at the
collective rate starting when the retarded wavefront arrives.

The field polarization convention (y-hat cross n-hat) ties the supported
geometry to observation points in the x-z plane; off-plane points are
rejected rather than extrapolated.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson

from .constants import C_LIGHT, EPSILON_0, HBAR
from .spectrum import ChainSpec, _check_mode_index, damping_rate, mode_energy

__all__ = [
    "ObservationPoint",
    "EmissionGeometry",
    "IntensityTrace",
    "GeometryError",
    "DegenerateGeometryError",
    "UnsupportedGeometryError",
    "NearFieldWarning",
    "DarkModeWarning",
    "geometry",
    "mode_intensity",
    "angular_pattern",
    "radiated_power",
]

# Observation distance below this multiple of the source length triggers a
# near-field warning; the leading-order far-field formula is kept.
DEFAULT_FAR_FIELD_RATIO = 10.0

_PLANE_TOLERANCE = 1.0e-12


class GeometryError(ValueError):
    """Observation geometry outside the supported domain."""


class DegenerateGeometryError(GeometryError):
    """Observation point coincides with the source center."""


class UnsupportedGeometryError(GeometryError):
    """Observation point off the x-z plane of the dipoles."""


class NearFieldWarning(UserWarning):
    """Far-field expression evaluated closer than the configured ratio."""


class DarkModeWarning(UserWarning):
    """Emission requested for a dark mode; intensity is exactly zero."""


@dataclass(frozen=True)
class ObservationPoint:
    """A detector position r [m]."""

    position: np.ndarray

    def __post_init__(self) -> None:
        pos = np.asarray(self.position, dtype=float)
        if pos.shape != (3,):
            raise ValueError("position must be a 3-vector")
        if not np.all(np.isfinite(pos)):
            raise ValueError("position components must be finite")
        object.__setattr__(self, "position", pos)


@dataclass(frozen=True)
class EmissionGeometry:
    """Derived geometry between one radiating dipole and a detector.

    Attributes
    ----------
    source_center : np.ndarray
        Dipole average position R [m].
    distance : float
        |r - R| [m].
    phi : float
        Angle between the dipole vector and r - R [rad], in [0, pi].
    unit_n : np.ndarray
        Line-of-sight unit vector (r - R)/|r - R|.
    polarization : np.ndarray
        Field direction y-hat cross n-hat at the detector.
    retarded_delay : float
        Light travel time |r - R| / c [s].
    """

    source_center: np.ndarray
    distance: float
    phi: float
    unit_n: np.ndarray
    polarization: np.ndarray
    retarded_delay: float


@dataclass
class IntensityTrace:
    """Time-resolved intensity at one observation point.

    ``per_term`` decomposes the total into per-source contributions and
    pairwise interference terms; the columns sum to ``total``.
    """

    times: np.ndarray
    total: np.ndarray
    per_term: dict[str, np.ndarray] = field(default_factory=dict)
    observation: ObservationPoint | None = None

    def __post_init__(self) -> None:
        self.times = np.asarray(self.times, dtype=float)
        self.total = np.asarray(self.total, dtype=float)
        if self.times.shape != self.total.shape:
            raise ValueError("times and total must have equal length")
        for label, values in self.per_term.items():
            arr = np.asarray(values, dtype=float)
            if arr.shape != self.times.shape:
                raise ValueError(f"per_term[{label!r}] length mismatch")
            self.per_term[label] = arr


def geometry(
    source_center: np.ndarray,
    dipole_dir: np.ndarray,
    obs: ObservationPoint,
) -> EmissionGeometry:
    """Distance, line of sight, dipole angle, polarization and retardation
    for a dipole at ``source_center`` seen from ``obs``.

    Raises ``DegenerateGeometryError`` for coincident points and
    ``UnsupportedGeometryError`` when the line of sight leaves the x-z
    plane (where the polarization convention holds).
    """
    center = np.asarray(source_center, dtype=float)
    dip = np.asarray(dipole_dir, dtype=float)
    if np.linalg.norm(dip) == 0.0:
        raise ValueError("dipole_dir must be nonzero")
    delta = obs.position - center
    distance = math.sqrt(float(np.dot(delta, delta)))
    if distance == 0.0:
        raise DegenerateGeometryError("observation point coincides with the source")
    if abs(delta[1]) > _PLANE_TOLERANCE * distance:
        raise UnsupportedGeometryError(
            "observation point off the x-z plane is not supported"
        )
    unit_n = delta / distance
    cos_phi = float(np.dot(dip, unit_n)) / float(np.linalg.norm(dip))
    phi = math.acos(min(1.0, max(-1.0, cos_phi)))
    polarization = np.cross(np.array([0.0, 1.0, 0.0]), unit_n)
    return EmissionGeometry(
        source_center=center,
        distance=distance,
        phi=phi,
        unit_n=unit_n,
        polarization=polarization,
        retarded_delay=distance / C_LIGHT,
    )


def _single_mode_coefficient(spec: ChainSpec, k: int) -> float:
    """Peak on-axis-normalized intensity prefactor of mode k at unit
    distance: mu^2 E_k^4 (a/L) cot^2(pi k a / 2L) / (16 pi^2 eps0 hbar^4 c^3)."""
    e_k = mode_energy(spec, k)
    cot = 1.0 / math.tan(math.pi * k * spec.lattice_const / (2.0 * spec.length))
    return spec.dipole_mag**2 * e_k**4 / (
        16.0 * math.pi**2 * EPSILON_0 * HBAR**4 * C_LIGHT**3
    ) * (spec.lattice_const / spec.length) * cot**2


def mode_intensity(
    spec: ChainSpec,
    k: int,
    obs: ObservationPoint,
    t: float | np.ndarray,
    excitation: int = 1,
    *,
    source_center=(0.0, 0.0, 0.0),
    far_field_ratio: float = DEFAULT_FAR_FIELD_RATIO,
):
    """Far-field intensity [W/m^2] of a single collective mode.

    The chain center sits at ``source_center``. ``excitation`` is the
    initial mode occupation (0 or 1). Times before the retarded arrival
    give exactly zero; dark modes give exactly zero with a
    ``DarkModeWarning``. Scalar ``t`` returns a float, an array of times
    returns an array.
    """
    if excitation not in (0, 1):
        raise ValueError("excitation must be 0 or 1")
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0

    _check_mode_index(spec, k)
    if k % 2 == 0:
        warnings.warn(f"mode k={k} is dark; intensity is zero", DarkModeWarning,
                      stacklevel=2)
        return 0.0 if scalar else np.zeros_like(t_arr)

    geo = geometry(source_center, spec.dipole_direction, obs)
    if geo.distance < far_field_ratio * spec.length:
        warnings.warn(
            f"observation distance {geo.distance:.3e} m is below "
            f"{far_field_ratio:g} chain lengths; far-field formula is approximate",
            NearFieldWarning,
            stacklevel=2,
        )
    gamma = damping_rate(spec, k)
    coeff = _single_mode_coefficient(spec, k)
    elapsed = t_arr - geo.retarded_delay
    value = np.where(
        elapsed >= 0.0,
        coeff * math.sin(geo.phi) ** 2 / geo.distance**2
        * excitation * np.exp(-gamma * np.maximum(elapsed, 0.0)),
        0.0,
    )
    return float(value) if scalar else value


def angular_pattern(
    spec: ChainSpec,
    k: int,
    radius: float,
    n_angles: int,
    *,
    far_field_ratio: float = DEFAULT_FAR_FIELD_RATIO,
) -> np.ndarray:
    """Intensity versus emission angle at the retarded arrival time.

    Returns an (n_angles, 2) array of (phi, intensity) pairs sampled on
    [0, pi]; phi is measured from the collective dipole axis.
    """
    if n_angles < 2:
        raise ValueError("n_angles must be at least 2")
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    phis = np.linspace(0.0, math.pi, n_angles)
    _check_mode_index(spec, k)
    if k % 2 == 0:
        warnings.warn(f"mode k={k} is dark; pattern is zero", DarkModeWarning,
                      stacklevel=2)
        return np.column_stack([phis, np.zeros_like(phis)])
    if radius < far_field_ratio * spec.length:
        warnings.warn(
            f"pattern radius {radius:.3e} m is below {far_field_ratio:g} chain "
            "lengths; far-field formula is approximate",
            NearFieldWarning,
            stacklevel=2,
        )
    coeff = _single_mode_coefficient(spec, k)
    return np.column_stack([phis, coeff * np.sin(phis) ** 2 / radius**2])


def radiated_power(
    spec: ChainSpec,
    k: int,
    t: float | np.ndarray,
    *,
    n_polar: int = 2001,
) -> float | np.ndarray:
    """Total power [W] radiated by mode k through a far sphere.

    Quadrature of the angular pattern over the full solid angle (the
    pattern is axially symmetric about the dipole, so a polar Simpson
    rule with weight 2 pi sin(phi) suffices). Times are measured from
    excitation; the retarded delay cancels on a fixed sphere and is
    taken as zero here.
    """
    _check_mode_index(spec, k)
    if k % 2 == 0:
        t_arr = np.asarray(t, dtype=float)
        return 0.0 if t_arr.ndim == 0 else np.zeros_like(t_arr)
    coeff = _single_mode_coefficient(spec, k)
    gamma = damping_rate(spec, k)
    phis = np.linspace(0.0, math.pi, n_polar)
    solid = simpson(np.sin(phis) ** 3 * 2.0 * math.pi, x=phis)
    t_arr = np.asarray(t, dtype=float)
    power = coeff * solid * np.exp(-gamma * t_arr)
    return float(power) if t_arr.ndim == 0 else power
