"""Run configuration: parsing, validation and unit conversion.

Configs are YAML files with sections ``chain``, ``layout``, ``state``,
``observation``, ``pattern`` and ``output``. Values are given in
laboratory units (eV, angstrom, e*angstrom) or directly in SI via the
``*_m`` / ``*_j`` / ``*_cm`` key variants; everything is converted to SI
here, at the boundary. Omitted sections fall back to the documented
defaults (a 10-site chain with 1 eV transition, 1000 A spacing, 1 e*A
dipole along the axis, observed on the z axis at 100 lattice constants).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import yaml

from .constants import ANGSTROM, E_ANGSTROM, EV, MAGIC_ANGLE
from .segments import InitialState, SegmentLayout, decompose
from .spectrum import ChainSpec, LatticeParams

__all__ = ["ConfigError", "NormalizationWarning", "RunConfig", "load_config"]


class ConfigError(ValueError):
    """Configuration file failed to parse or validate."""


class NormalizationWarning(UserWarning):
    """Initial-state amplitudes were renormalized by more than 1e-6."""


_DEFAULTS = {
    "chain": {
        "n_sites": 10,
        "lattice_const_angstrom": 1000.0,
        "atom_energy_ev": 1.0,
        "dipole_e_angstrom": 1.0,
        "dipole_angle": 0.0,
    },
    "observation": {
        "point_units": "lattice_const",
        "points": [[0.0, 0.0, 100.0]],
        "n_time": 2000,
        "time_span_lifetimes": 5.0,
    },
    "pattern": {
        "mode_k": 1,
        "radius_over_length": 100.0,
        "n_angles": 181,
    },
    "output": {"prefix": "run"},
}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run parameters, strict SI."""

    params: LatticeParams
    n_sites: int
    occupancy: str
    amplitudes: tuple[tuple[str, complex], ...]
    points: tuple[tuple[float, float, float], ...]
    n_time: int
    time_span_lifetimes: float
    pattern_k: int
    pattern_radius: float
    pattern_angles: int
    output_prefix: str

    def chain(self) -> ChainSpec:
        return ChainSpec(
            lattice_const=self.params.lattice_const,
            atom_energy=self.params.atom_energy,
            dipole_mag=self.params.dipole_mag,
            dipole_angle=self.params.dipole_angle,
            n_sites=self.n_sites,
        )

    def layout(self) -> SegmentLayout:
        return decompose(self.occupancy, self.params)

    def initial_state(self) -> InitialState:
        return InitialState(
            {tuple(int(ch) for ch in key): amp for key, amp in self.amplitudes}
        )

    def to_canonical_dict(self) -> dict:
        """Canonical (SI, fully resolved) form; parseable by ``from_dict``."""
        return {
            "chain": {
                "n_sites": self.n_sites,
                "lattice_const_m": self.params.lattice_const,
                "atom_energy_j": self.params.atom_energy,
                "dipole_cm": self.params.dipole_mag,
                "dipole_angle": self.params.dipole_angle,
            },
            "layout": {"occupancy": self.occupancy},
            "state": {
                "amplitudes": {
                    key: [amp.real, amp.imag] for key, amp in self.amplitudes
                }
            },
            "observation": {
                "point_units": "m",
                "points": [list(p) for p in self.points],
                "n_time": self.n_time,
                "time_span_lifetimes": self.time_span_lifetimes,
            },
            "pattern": {
                "mode_k": self.pattern_k,
                "radius_m": self.pattern_radius,
                "n_angles": self.pattern_angles,
            },
            "output": {"prefix": self.output_prefix},
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "RunConfig":
        return _build(raw)


def _fail(path: str, message: str) -> ConfigError:
    return ConfigError(f"{path}: {message}")


def _section(raw: dict, name: str) -> dict:
    section = raw.get(name, {})
    if section is None:
        section = {}
    if not isinstance(section, dict):
        raise _fail(name, "must be a mapping")
    return dict(section)


def _check_unknown(path: str, section: dict, allowed: set[str]) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise _fail(f"{path}.{sorted(unknown)[0]}", "unknown key")


def _pick_unit(path: str, section: dict, variants: dict[str, float],
               default_key: str, default_value: float) -> float:
    """Resolve a quantity given in exactly one of several unit variants."""
    present = [k for k in variants if k in section]
    if len(present) > 1:
        raise _fail(path, f"give only one of {sorted(variants)}")
    if not present:
        return default_value * variants[default_key]
    key = present[0]
    value = section[key]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise _fail(f"{path}.{key}", "must be a number")
    return float(value) * variants[key]


def _positive_int(path: str, value, minimum: int = 1) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise _fail(path, f"must be an integer >= {minimum}")
    return value


def _build(raw: dict) -> RunConfig:
    if not isinstance(raw, dict):
        raise ConfigError("top level must be a mapping of sections")
    _check_unknown(
        "", raw, {"chain", "layout", "state", "observation", "pattern", "output"}
    )

    chain = _section(raw, "chain")
    _check_unknown("chain", chain, {
        "n_sites",
        "lattice_const_angstrom", "lattice_const_m",
        "atom_energy_ev", "atom_energy_j",
        "dipole_e_angstrom", "dipole_cm",
        "dipole_angle",
    })
    n_sites = _positive_int("chain.n_sites",
                            chain.get("n_sites", _DEFAULTS["chain"]["n_sites"]))
    lattice_const = _pick_unit(
        "chain", chain,
        {"lattice_const_angstrom": ANGSTROM, "lattice_const_m": 1.0},
        "lattice_const_angstrom", _DEFAULTS["chain"]["lattice_const_angstrom"],
    )
    atom_energy = _pick_unit(
        "chain", chain,
        {"atom_energy_ev": EV, "atom_energy_j": 1.0},
        "atom_energy_ev", _DEFAULTS["chain"]["atom_energy_ev"],
    )
    dipole = _pick_unit(
        "chain", chain,
        {"dipole_e_angstrom": E_ANGSTROM, "dipole_cm": 1.0},
        "dipole_e_angstrom", _DEFAULTS["chain"]["dipole_e_angstrom"],
    )
    angle_raw = chain.get("dipole_angle", _DEFAULTS["chain"]["dipole_angle"])
    if isinstance(angle_raw, str):
        if angle_raw.strip().lower() != "magic":
            raise _fail("chain.dipole_angle",
                        f"unknown keyword {angle_raw!r} (use 'magic' or radians)")
        dipole_angle = MAGIC_ANGLE
    elif isinstance(angle_raw, (int, float)) and not isinstance(angle_raw, bool):
        dipole_angle = float(angle_raw)
    else:
        raise _fail("chain.dipole_angle", "must be a number or 'magic'")
    try:
        params = LatticeParams(
            lattice_const=lattice_const,
            atom_energy=atom_energy,
            dipole_mag=dipole,
            dipole_angle=dipole_angle,
        )
    except ValueError as exc:
        raise _fail("chain", str(exc)) from exc

    layout_sec = _section(raw, "layout")
    _check_unknown("layout", layout_sec, {"occupancy"})
    occupancy = layout_sec.get("occupancy", "1" * n_sites)
    if not isinstance(occupancy, str) or not occupancy:
        raise _fail("layout.occupancy", "must be a nonempty string of 0/1")
    if set(occupancy) - {"0", "1"}:
        raise _fail("layout.occupancy", "must contain only 0/1 characters")
    if "1" not in occupancy:
        raise _fail("layout.occupancy", "needs at least one occupied site")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # resonant-neighbor warning re-emitted at use
        n_segments = len(decompose(occupancy, params).segments)

    state_sec = _section(raw, "state")
    _check_unknown("state", state_sec, {"amplitudes"})
    amps_raw = state_sec.get("amplitudes")
    if amps_raw is None:
        amp = 1.0 / math.sqrt(n_segments)
        amps = {
            "".join("1" if j == i else "0" for j in range(n_segments)): complex(amp)
            for i in range(n_segments)
        }
    else:
        if not isinstance(amps_raw, dict) or not amps_raw:
            raise _fail("state.amplitudes", "must be a nonempty mapping")
        amps = {}
        for key, pair in amps_raw.items():
            key = str(key)
            if len(key) != n_segments or set(key) - {"0", "1"}:
                raise _fail(
                    f"state.amplitudes.{key}",
                    f"key must be {n_segments} characters of 0/1 "
                    f"(one per segment)",
                )
            if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                    or not all(isinstance(x, (int, float)) for x in pair)):
                raise _fail(f"state.amplitudes.{key}", "value must be [re, im]")
            amps[key] = complex(float(pair[0]), float(pair[1]))
        norm = math.sqrt(sum(abs(c) ** 2 for c in amps.values()))
        if norm == 0.0:
            raise _fail("state.amplitudes", "state has zero norm")
        if abs(norm - 1.0) > 1e-6:
            warnings.warn(
                f"initial state renormalized (norm was {norm!r})",
                NormalizationWarning,
                stacklevel=3,
            )
        if abs(norm - 1.0) > 1e-12:
            amps = {k: c / norm for k, c in amps.items()}

    obs_sec = _section(raw, "observation")
    _check_unknown("observation", obs_sec,
                   {"points", "point_units", "n_time", "time_span_lifetimes"})
    units = obs_sec.get("point_units", _DEFAULTS["observation"]["point_units"])
    if units not in ("m", "lattice_const"):
        raise _fail("observation.point_units", "must be 'm' or 'lattice_const'")
    scale = 1.0 if units == "m" else lattice_const
    points_raw = obs_sec.get("points", _DEFAULTS["observation"]["points"])
    if not isinstance(points_raw, (list, tuple)) or not points_raw:
        raise _fail("observation.points", "must be a nonempty list of [x, y, z]")
    points = []
    for i, p in enumerate(points_raw):
        if (not isinstance(p, (list, tuple)) or len(p) != 3
                or not all(isinstance(x, (int, float)) for x in p)):
            raise _fail(f"observation.points[{i}]", "must be [x, y, z] numbers")
        vec = tuple(float(x) * scale for x in p)
        if not all(np.isfinite(vec)):
            raise _fail(f"observation.points[{i}]", "components must be finite")
        points.append(vec)
    n_time = _positive_int(
        "observation.n_time",
        obs_sec.get("n_time", _DEFAULTS["observation"]["n_time"]), minimum=2,
    )
    span = obs_sec.get("time_span_lifetimes",
                       _DEFAULTS["observation"]["time_span_lifetimes"])
    if not isinstance(span, (int, float)) or isinstance(span, bool) or span <= 0:
        raise _fail("observation.time_span_lifetimes", "must be a positive number")

    pattern_sec = _section(raw, "pattern")
    _check_unknown("pattern", pattern_sec,
                   {"mode_k", "radius_over_length", "radius_m", "n_angles"})
    pattern_k = _positive_int(
        "pattern.mode_k", pattern_sec.get("mode_k", _DEFAULTS["pattern"]["mode_k"]))
    if pattern_k > n_sites:
        raise _fail("pattern.mode_k", f"exceeds chain.n_sites={n_sites}")
    chain_length = lattice_const * (n_sites + 1)
    pattern_radius = _pick_unit(
        "pattern", pattern_sec,
        {"radius_over_length": chain_length, "radius_m": 1.0},
        "radius_over_length", _DEFAULTS["pattern"]["radius_over_length"],
    )
    pattern_angles = _positive_int(
        "pattern.n_angles",
        pattern_sec.get("n_angles", _DEFAULTS["pattern"]["n_angles"]), minimum=2,
    )

    output_sec = _section(raw, "output")
    _check_unknown("output", output_sec, {"prefix"})
    prefix = output_sec.get("prefix", _DEFAULTS["output"]["prefix"])
    if not isinstance(prefix, str) or not prefix:
        raise _fail("output.prefix", "must be a nonempty string")

    return RunConfig(
        params=params,
        n_sites=n_sites,
        occupancy=occupancy,
        amplitudes=tuple(sorted(amps.items())),
        points=tuple(points),
        n_time=n_time,
        time_span_lifetimes=float(span),
        pattern_k=pattern_k,
        pattern_radius=pattern_radius,
        pattern_angles=pattern_angles,
        output_prefix=prefix,
    )


def load_config(path) -> RunConfig:
    """Parse and validate a YAML run configuration."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc
    if raw is None:
        raw = {}
    return RunConfig.from_dict(raw)
