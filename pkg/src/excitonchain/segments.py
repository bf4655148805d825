"""Defected lattices: segment decomposition and interfering emission.

Vacancies split a long one-dimensional lattice into independent chain
segments. Each segment keeps only its superradiant (k=1) mode, modeled
as a point dipole at the segment center; the total far field is the
coherent sum of the per-segment fields, so the detected intensity picks
up pairwise interference terms whenever the initial state carries
coherence between segments.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .constants import C_LIGHT, EPSILON_0, HBAR
from .emission import IntensityTrace, NearFieldWarning, ObservationPoint, geometry
from .spectrum import (
    ChainSpec,
    CollectiveMode,
    LatticeParams,
    collective_dipole,
    damping_rate,
    mode_energy,
    Parity,
)

__all__ = [
    "Segment",
    "SegmentLayout",
    "InitialState",
    "Resonance",
    "EmptyLayoutError",
    "ZeroSeparationError",
    "ResonantNeighborsWarning",
    "decompose",
    "dipole_dipole_energy",
    "segment_coupling",
    "transfer_resonance",
    "intensity_point",
    "intensity_trace",
]


class EmptyLayoutError(ValueError):
    """Occupancy contains no occupied site."""


class ZeroSeparationError(ValueError):
    """Dipole-dipole coupling requested at zero separation."""


class ResonantNeighborsWarning(UserWarning):
    """Adjacent segments of equal length are mutually resonant; the
    independent-decay model is unreliable for them."""


class Resonance(str, Enum):
    RESONANT = "resonant"
    BLOCKED = "blocked"


@dataclass(frozen=True)
class Segment:
    """One maximal run of occupied sites.

    ``superradiant`` is the nodeless k=1 mode of the segment treated as a
    standalone chain; its dipole is localized at ``center``. Only this
    mode radiates in the segment engine; the full spectrum (dark modes
    included, for spectroscopy) is available via ``chain()``.
    """

    n_sites: int
    first_site: int
    length: float
    center: np.ndarray
    superradiant: CollectiveMode
    params: LatticeParams

    def chain(self) -> ChainSpec:
        """The segment as a standalone chain, for full mode tables."""
        return ChainSpec(
            lattice_const=self.params.lattice_const,
            atom_energy=self.params.atom_energy,
            dipole_mag=self.params.dipole_mag,
            dipole_angle=self.params.dipole_angle,
            n_sites=self.n_sites,
        )


@dataclass(frozen=True)
class SegmentLayout:
    """Occupancy bitmap of the full lattice plus its derived segments."""

    occupancy: tuple[bool, ...]
    lattice_const: float
    params: LatticeParams
    segments: tuple[Segment, ...]

    def to_occupancy(self) -> tuple[bool, ...]:
        """Reconstruct the occupancy bitmap from the segment list."""
        flags = [False] * len(self.occupancy)
        for seg in self.segments:
            for n in range(seg.first_site, seg.first_site + seg.n_sites):
                flags[n] = True
        return tuple(flags)


def _parse_occupancy(occupancy: Sequence[bool] | str) -> tuple[bool, ...]:
    if isinstance(occupancy, str):
        if not occupancy:
            raise EmptyLayoutError("occupancy string is empty")
        bad = set(occupancy) - {"0", "1"}
        if bad:
            raise ValueError(f"occupancy string may contain only 0/1, got {bad}")
        return tuple(ch == "1" for ch in occupancy)
    flags = tuple(bool(x) for x in occupancy)
    if not flags:
        raise EmptyLayoutError("occupancy list is empty")
    return flags


def decompose(occupancy: Sequence[bool] | str, params: LatticeParams) -> SegmentLayout:
    """Split an occupancy bitmap into maximal occupied runs.

    Each segment's dipole center is the arithmetic mean of its occupied
    site positions (site n sits at x = n a). Raises ``EmptyLayoutError``
    when no site is occupied; warns when two adjacent segments have the
    same number of sites (their superradiant modes are degenerate and
    exchange excitation resonantly, which this model neglects).
    """
    flags = _parse_occupancy(occupancy)
    if not any(flags):
        raise EmptyLayoutError("all lattice sites are vacant")
    a = params.lattice_const
    common = LatticeParams(
        lattice_const=params.lattice_const,
        atom_energy=params.atom_energy,
        dipole_mag=params.dipole_mag,
        dipole_angle=params.dipole_angle,
    )
    segments: list[Segment] = []
    start = None
    for i, occ in enumerate(list(flags) + [False]):
        if occ and start is None:
            start = i
        elif not occ and start is not None:
            n = i - start
            chain = ChainSpec(
                lattice_const=common.lattice_const,
                atom_energy=common.atom_energy,
                dipole_mag=common.dipole_mag,
                dipole_angle=common.dipole_angle,
                n_sites=n,
            )
            mode = CollectiveMode(
                k=1,
                energy=mode_energy(chain, 1),
                dipole_vec=collective_dipole(chain, 1),
                gamma=damping_rate(chain, 1),
                parity=Parity.BRIGHT,
            )
            center = np.array([a * (start + 0.5 * (n - 1)), 0.0, 0.0])
            segments.append(
                Segment(
                    n_sites=n,
                    first_site=start,
                    length=a * (n + 1),
                    center=center,
                    superradiant=mode,
                    params=common,
                )
            )
            start = None
    for left, right in zip(segments, segments[1:]):
        if left.n_sites == right.n_sites:
            warnings.warn(
                f"adjacent segments of equal length (N={left.n_sites}) are "
                "resonant; independent decay is a poor approximation",
                ResonantNeighborsWarning,
                stacklevel=2,
            )
    return SegmentLayout(
        occupancy=flags,
        lattice_const=a,
        params=common,
        segments=tuple(segments),
    )


def dipole_dipole_energy(
    mu_a: np.ndarray,
    mu_b: np.ndarray,
    separation: np.ndarray,
    *,
    lengths: tuple[float, float] | None = None,
) -> float:
    """Anisotropic dipole-dipole interaction energy [J] of two point
    dipoles separated by ``separation``.

    When the source sizes are supplied via ``lengths``, separations not
    exceeding the larger size trigger a ``NearFieldWarning`` (the
    point-dipole form only holds for well-separated sources).
    """
    mu_a = np.asarray(mu_a, dtype=float)
    mu_b = np.asarray(mu_b, dtype=float)
    r_vec = np.asarray(separation, dtype=float)
    r = float(np.linalg.norm(r_vec))
    if r == 0.0:
        raise ZeroSeparationError("dipole-dipole energy diverges at zero separation")
    if lengths is not None and r <= max(lengths):
        warnings.warn(
            f"separation {r:.3e} m does not exceed the source size "
            f"{max(lengths):.3e} m; point-dipole coupling is approximate",
            NearFieldWarning,
            stacklevel=2,
        )
    return (
        float(np.dot(mu_a, mu_b)) / r**3
        - 3.0 * float(np.dot(mu_a, r_vec)) * float(np.dot(mu_b, r_vec)) / r**5
    ) / (4.0 * math.pi * EPSILON_0)


def segment_coupling(seg_a: Segment, seg_b: Segment) -> float:
    """Excitation transfer energy [J] between two segments' superradiant
    dipoles, localized at the segment centers."""
    return dipole_dipole_energy(
        seg_a.superradiant.dipole_vec,
        seg_b.superradiant.dipole_vec,
        seg_b.center - seg_a.center,
        lengths=(seg_a.length, seg_b.length),
    )


def transfer_resonance(
    seg_a: Segment,
    seg_b: Segment,
    linewidth_scale: float = 1.0,
) -> Resonance:
    """Whether excitation transfer between two segments is energetically
    allowed: resonant when the mode energy difference fits within
    ``linewidth_scale`` collective linewidths, blocked otherwise."""
    gap = abs(seg_a.superradiant.energy - seg_b.superradiant.energy)
    width = HBAR * max(seg_a.superradiant.gamma, seg_b.superradiant.gamma)
    return Resonance.RESONANT if gap <= linewidth_scale * width else Resonance.BLOCKED


@dataclass(frozen=True)
class InitialState:
    """Initial excitation state over the segments, in the product basis of
    per-segment occupations (at most one excitation per segment).

    ``amplitudes`` maps occupation tuples, e.g. (1, 0), to complex
    amplitudes. The state must be normalized to 1 within 1e-12.
    """

    amplitudes: Mapping[tuple[int, ...], complex]

    def __post_init__(self) -> None:
        amps = {tuple(int(b) for b in key): complex(val)
                for key, val in self.amplitudes.items()}
        if not amps:
            raise ValueError("initial state needs at least one amplitude")
        lengths = {len(key) for key in amps}
        if len(lengths) != 1:
            raise ValueError("occupation tuples must all have the same length")
        for key in amps:
            if any(b not in (0, 1) for b in key):
                raise ValueError(f"occupations must be 0 or 1, got {key}")
        norm = sum(abs(c) ** 2 for c in amps.values())
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state norm^2 = {norm!r}, expected 1 within 1e-12")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_segments(self) -> int:
        return len(next(iter(self.amplitudes)))

    @classmethod
    def single(cls, n_segments: int, excited: int) -> "InitialState":
        """|0..1..0> with segment ``excited`` (0-based) excited."""
        key = tuple(1 if i == excited else 0 for i in range(n_segments))
        return cls({key: 1.0 + 0.0j})

    @classmethod
    def fully_excited(cls, n_segments: int) -> "InitialState":
        """|1 1 .. 1>, one excitation in every segment."""
        return cls({(1,) * n_segments: 1.0 + 0.0j})

    @classmethod
    def symmetric_pair(cls, n_segments: int, i: int, j: int) -> "InitialState":
        """(|1_i> + |1_j>)/sqrt(2), the interference-ready superposition."""
        amp = 1.0 / math.sqrt(2.0)
        key_i = tuple(1 if s == i else 0 for s in range(n_segments))
        key_j = tuple(1 if s == j else 0 for s in range(n_segments))
        return cls({key_i: amp, key_j: amp})

    def occupation(self, i: int) -> float:
        """Initial occupation of segment i (0-based)."""
        return sum(
            abs(c) ** 2 for key, c in self.amplitudes.items() if key[i] == 1
        )

    def coherence(self, i: int, j: int) -> complex:
        """Initial cross coherence between segments i and j (0-based);
        the i=j diagonal returns the occupation."""
        if i == j:
            return complex(self.occupation(i))
        total = 0.0 + 0.0j
        for key, c in self.amplitudes.items():
            if key[j] == 1 and key[i] == 0:
                flipped = list(key)
                flipped[j] = 0
                flipped[i] = 1
                partner = self.amplitudes.get(tuple(flipped))
                if partner is not None:
                    total += partner.conjugate() * c
        return total


def _segment_fields(layout: SegmentLayout, obs: ObservationPoint):
    """Per-segment emission data: (omega, gamma, |mu|, r, sin phi, n-hat,
    arrival time)."""
    dip_dir = layout.params.dipole_direction
    rows = []
    for seg in layout.segments:
        geo = geometry(seg.center, dip_dir, obs)
        mode = seg.superradiant
        rows.append(
            (
                mode.energy / HBAR,
                mode.gamma,
                float(np.linalg.norm(mode.dipole_vec)),
                geo.distance,
                math.sin(geo.phi),
                geo.unit_n,
                geo.retarded_delay,
            )
        )
    return rows


def intensity_trace(
    layout: SegmentLayout,
    state: InitialState,
    obs: ObservationPoint,
    times: np.ndarray,
) -> IntensityTrace:
    """Detected intensity versus time with its per-term decomposition.

    Diagonal terms ``I_i`` (1-based segment labels) carry each segment's
    occupation-weighted dipole emission; cross terms ``G_ij`` carry the
    pairwise interference (both orderings combined, real). The emission
    expressions are evaluated as written for the whole trace window;
    the window is expected to start at the wavefront arrival.
    """
    if state.n_segments != len(layout.segments):
        raise ValueError(
            f"state describes {state.n_segments} segments, layout has "
            f"{len(layout.segments)}"
        )
    t = np.asarray(times, dtype=float)
    fields = _segment_fields(layout, obs)
    scale = 1.0 / (32.0 * math.pi**2 * EPSILON_0 * HBAR**4 * C_LIGHT**3)

    per_term: dict[str, np.ndarray] = {}
    for i, (w, gam, mu_c, r, sphi, _n, ti) in enumerate(fields):
        occ = state.occupation(i)
        energy = w * HBAR
        per_term[f"I_{i + 1}"] = (
            scale * energy**4 * mu_c**2 * sphi**2 / r**2
            * occ * np.exp(-gam * (t - ti))
        )
    for i in range(len(fields)):
        wi, gi, mui, ri, sphi_i, ni, ti = fields[i]
        for j in range(i + 1, len(fields)):
            wj, gj, muj, rj, sphi_j, nj, tj = fields[j]
            coh = state.coherence(i, j)
            ei, ej = wi * HBAR, wj * HBAR
            amp = (
                scale * ei**2 * ej**2 * mui * muj
                * sphi_i * sphi_j / (ri * rj) * float(np.dot(ni, nj))
            )
            decay = np.exp(-gi * (t - ti) / 2.0 - gj * (t - tj) / 2.0)
            # beat phase w_i (t-t_i) - w_j (t-t_j), rearranged so no term
            # exceeds a few tens of radians (w t alone is ~1e9 rad and
            # would lose 7 digits to rounding)
            phase = (wi - wj) * (t - ti) - wj * (ti - tj)
            per_term[f"G_{i + 1}{j + 1}"] = (
                2.0 * amp * decay
                * (coh.real * np.cos(phase) - coh.imag * np.sin(phase))
            )
    total = np.sum(list(per_term.values()), axis=0)
    return IntensityTrace(times=t, total=total, per_term=per_term, observation=obs)


def intensity_point(
    layout: SegmentLayout,
    state: InitialState,
    obs: ObservationPoint,
    t: float,
) -> tuple[float, dict[str, float]]:
    """Total intensity and per-term decomposition at a single time."""
    trace = intensity_trace(layout, state, obs, np.array([float(t)]))
    return float(trace.total[0]), {k: float(v[0]) for k, v in trace.per_term.items()}
