"""Run orchestration and serialization.

Given a resolved ``RunConfig``, computes the requested artifacts and
writes them as CSV (17 significant digits, double round-trip exact) or a
JSON mirror with the same field names, plus a manifest pinning the
resolved configuration, the physical constants and the package version.
Outputs are deterministic: identical configs produce byte-identical
files.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .config import RunConfig
from .constants import C_LIGHT, constants_dict
from .emission import IntensityTrace, ObservationPoint, angular_pattern
from .segments import intensity_trace
from .spectrum import all_modes, single_atom_rate
from .two_segment import extract_beats, two_segment_trace

__all__ = ["run", "TASKS"]

TASKS = ("modes", "pattern", "trace", "scenario-two-seg")


def _format_float(x: float) -> str:
    return format(float(x), ".17g")


def _require_finite(name: str, values: np.ndarray) -> None:
    if not np.all(np.isfinite(values)):
        raise ValueError(f"non-finite values in output column {name!r}")


def _write_columns(path: Path, columns: dict[str, np.ndarray], fmt: str) -> Path:
    """One table, as CSV or a JSON mirror with identical field names."""
    for name, values in columns.items():
        _require_finite(name, np.asarray(values, dtype=float))
    if fmt == "csv":
        out = path.with_suffix(".csv")
        lines = [",".join(columns)]
        arrays = [np.asarray(v, dtype=float) for v in columns.values()]
        for row in zip(*arrays):
            lines.append(",".join(_format_float(x) for x in row))
        out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    else:
        out = path.with_suffix(".json")
        payload = {k: [float(x) for x in np.asarray(v, dtype=float)]
                   for k, v in columns.items()}
        out.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
    return out


def _modes_table(cfg: RunConfig) -> dict[str, np.ndarray]:
    chain = cfg.chain()
    if chain.dipole_mag == 0.0:
        raise ValueError("mode table ratios are undefined for a zero dipole")
    gamma_atom = single_atom_rate(chain)
    modes = all_modes(chain)
    return {
        "k": np.array([m.k for m in modes], dtype=float),
        "energy_shift_j": np.array(
            [m.energy - chain.atom_energy for m in modes]
        ),
        "dipole_ratio": np.array(
            [np.linalg.norm(m.dipole_vec) / chain.dipole_mag for m in modes]
        ),
        "damping_ratio": np.array([m.gamma / gamma_atom for m in modes]),
    }


def _pattern_table(cfg: RunConfig) -> dict[str, np.ndarray]:
    samples = angular_pattern(
        cfg.chain(), cfg.pattern_k, cfg.pattern_radius, cfg.pattern_angles
    )
    return {"angle_rad": samples[:, 0], "intensity_w_m2": samples[:, 1]}


def _time_grid(cfg: RunConfig, start: float) -> np.ndarray:
    span = cfg.time_span_lifetimes / single_atom_rate(cfg.params)
    return start + np.linspace(0.0, span, cfg.n_time)


def _trace_columns(trace: IntensityTrace) -> dict[str, np.ndarray]:
    columns: dict[str, np.ndarray] = {
        "time_s": trace.times,
        "total_w_m2": trace.total,
    }
    for label, values in trace.per_term.items():
        columns[label] = values
    return columns


def _one_trace(cfg: RunConfig, point: tuple[float, float, float]) -> IntensityTrace:
    obs = ObservationPoint(np.array(point))
    layout = cfg.layout()
    # window starts when the slowest wavefront has arrived everywhere
    start = max(
        float(np.linalg.norm(obs.position - seg.center)) for seg in layout.segments
    ) / C_LIGHT
    return intensity_trace(layout, cfg.initial_state(), obs, _time_grid(cfg, start))


def run(
    cfg: RunConfig,
    out_dir,
    *,
    fmt: str = "csv",
    threads: int = 1,
    tasks=("modes", "pattern", "trace"),
) -> list[Path]:
    """Compute the requested artifact files. Returns the written paths,
    manifest last."""
    if fmt not in ("csv", "json"):
        raise ValueError("fmt must be 'csv' or 'json'")
    unknown = [t for t in tasks if t not in TASKS]
    if unknown:
        raise ValueError(f"unknown task {unknown[0]!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    prefix = cfg.output_prefix
    written: list[Path] = []
    extras: dict[str, object] = {}

    if "modes" in tasks:
        written.append(_write_columns(out / f"{prefix}_modes", _modes_table(cfg), fmt))
    if "pattern" in tasks:
        written.append(
            _write_columns(out / f"{prefix}_pattern", _pattern_table(cfg), fmt)
        )
    if "trace" in tasks:
        points = list(cfg.points)
        if threads > 1 and len(points) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                traces = list(pool.map(lambda p: _one_trace(cfg, p), points))
        else:
            traces = [_one_trace(cfg, p) for p in points]
        for i, trace in enumerate(traces, start=1):
            written.append(
                _write_columns(
                    out / f"{prefix}_trace_{i}", _trace_columns(trace), fmt
                )
            )
    if "scenario-two-seg" in tasks:
        point = cfg.points[0]
        obs = ObservationPoint(np.array(point))
        start = float(np.linalg.norm(obs.position)) / C_LIGHT
        times = _time_grid(cfg, start)
        exact = two_segment_trace(cfg.params, obs, times)
        far = two_segment_trace(cfg.params, obs, times, far_zone=True)
        written.append(
            _write_columns(out / f"{prefix}_scenario_exact", _trace_columns(exact), fmt)
        )
        written.append(
            _write_columns(out / f"{prefix}_scenario_far", _trace_columns(far), fmt)
        )
        beats = extract_beats(far)
        extras["beats"] = {
            "oscillating": beats.oscillating,
            "period_s": beats.period,
            "envelope_rates_per_s": beats.envelope_rates,
        }

    manifest = {
        "version": _package_version(),
        "constants": constants_dict(),
        "config": cfg.to_canonical_dict(),
        "format": fmt,
        "tasks": list(tasks),
        "outputs": [p.name for p in written],
    }
    manifest.update(extras)
    manifest_path = out / f"{prefix}_manifest.json"
    manifest_path.write_text(
        json.dumps(manifest, indent=1, sort_keys=True) + "\n", encoding="utf-8"
    )
    written.append(manifest_path)
    return written


def _package_version() -> str:
    from . import __version__

    return __version__
