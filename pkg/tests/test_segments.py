"""Segment decomposition, inter-segment coupling/resonance, initial
states and the multi-segment intensity engine."""

import math

import numpy as np
import pytest

from excitonchain import (
    EmptyLayoutError,
    InitialState,
    MAGIC_ANGLE,
    NearFieldWarning,
    ObservationPoint,
    Resonance,
    ResonantNeighborsWarning,
    UnsupportedGeometryError,
    ZeroSeparationError,
    decompose,
    dipole_dipole_energy,
    hopping_energy,
    intensity_point,
    intensity_trace,
    mode_intensity,
    segment_coupling,
    single_atom_rate,
    transfer_resonance,
)
from excitonchain.constants import C_LIGHT, EPSILON_0
from excitonchain.spectrum import ChainSpec, LatticeParams


def at_angle(params: LatticeParams, angle: float) -> LatticeParams:
    return LatticeParams(
        lattice_const=params.lattice_const,
        atom_energy=params.atom_energy,
        dipole_mag=params.dipole_mag,
        dipole_angle=angle,
    )


# ------------------------------------------------------------- decompose

def test_worked_layout_decomposition(params):
    a = params.lattice_const
    layout = decompose([True, False, True, True], params)
    assert len(layout.segments) == 2
    alpha, beta = layout.segments
    assert (alpha.n_sites, beta.n_sites) == (1, 2)
    assert alpha.center == pytest.approx([0.0, 0.0, 0.0])
    assert beta.center == pytest.approx([2.5 * a, 0.0, 0.0])
    assert alpha.length == pytest.approx(2 * a)
    assert beta.length == pytest.approx(3 * a)
    # two-site superradiant mode: energy E_A + J, dipole sqrt(2) mu,
    # rate ~ 2 Gamma_A
    j = hopping_energy(params)
    assert beta.superradiant.energy == pytest.approx(
        params.atom_energy + j, rel=1e-14
    )
    assert np.linalg.norm(beta.superradiant.dipole_vec) == pytest.approx(
        math.sqrt(2) * params.dipole_mag, rel=1e-12
    )
    assert beta.superradiant.gamma == pytest.approx(
        2 * single_atom_rate(params), rel=1e-6
    )


def test_decompose_accepts_occupancy_string(params):
    layout = decompose("1011", params)
    assert [s.n_sites for s in layout.segments] == [1, 2]
    assert layout.occupancy == (True, False, True, True)


def test_single_segment_when_fully_occupied(params):
    layout = decompose("1" * 7, params)
    assert [s.n_sites for s in layout.segments] == [7]
    assert layout.segments[0].center == pytest.approx(
        [3.0 * params.lattice_const, 0.0, 0.0]
    )


def test_alternating_gives_unit_segments(params):
    with pytest.warns(ResonantNeighborsWarning):
        layout = decompose("10101", params)
    assert [s.n_sites for s in layout.segments] == [1, 1, 1]


def test_empty_layout_errors(params):
    with pytest.raises(EmptyLayoutError):
        decompose("000", params)
    with pytest.raises(EmptyLayoutError):
        decompose("", params)
    with pytest.raises(EmptyLayoutError):
        decompose([], params)
    with pytest.raises(ValueError):
        decompose("10x1", params)


def test_segment_exposes_full_spectrum(params):
    # dark modes are excluded from emission but stay available for
    # spectroscopy through the segment's chain view
    from excitonchain import Parity, all_modes

    layout = decompose("10111", params)
    modes = all_modes(layout.segments[1].chain())
    assert [m.parity for m in modes] == [Parity.BRIGHT, Parity.DARK, Parity.BRIGHT]
    assert modes[0].energy == layout.segments[1].superradiant.energy


def test_occupancy_round_trip(params, rng):
    for _ in range(50):
        bits = rng.integers(0, 2, size=rng.integers(1, 40)).astype(bool)
        if not bits.any():
            continue
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ResonantNeighborsWarning)
            layout = decompose(bits.tolist(), params)
        assert layout.to_occupancy() == tuple(bits.tolist())
        assert sum(s.n_sites for s in layout.segments) == int(bits.sum())


# ------------------------------------------------ dipole-dipole coupling

def test_parallel_dipoles_perpendicular_to_axis(params):
    mu = params.dipole_mag
    r = 7 * params.lattice_const
    value = dipole_dipole_energy(
        [0, 0, mu], [0, 0, mu], [r, 0, 0]
    )
    assert value == pytest.approx(mu**2 / (4 * math.pi * EPSILON_0 * r**3), rel=1e-12)


def test_head_to_tail_dipoles(params):
    mu = params.dipole_mag
    r = 7 * params.lattice_const
    value = dipole_dipole_energy([mu, 0, 0], [mu, 0, 0], [r, 0, 0])
    assert value == pytest.approx(
        -2 * mu**2 / (4 * math.pi * EPSILON_0 * r**3), rel=1e-12
    )


@pytest.mark.parametrize("theta", np.linspace(0.0, math.pi / 2, 31))
def test_point_dipole_coupling_reduces_to_hopping(params, theta):
    # two bare dipoles at angle theta, one lattice constant apart, must
    # reproduce the nearest-neighbor transfer energy and its angular factor
    p = at_angle(params, float(theta))
    mu_vec = p.dipole_mag * p.dipole_direction
    value = dipole_dipole_energy(mu_vec, mu_vec, [p.lattice_const, 0, 0])
    scale = p.dipole_mag**2 / (4 * math.pi * EPSILON_0 * p.lattice_const**3)
    assert value == pytest.approx(hopping_energy(p), rel=1e-12, abs=1e-12 * scale)


def test_zero_separation_is_singular():
    with pytest.raises(ZeroSeparationError):
        dipole_dipole_energy([1e-29, 0, 0], [1e-29, 0, 0], [0, 0, 0])


def test_close_separation_flags(params):
    mu = params.dipole_mag
    with pytest.warns(NearFieldWarning):
        dipole_dipole_energy(
            [0, 0, mu], [0, 0, mu], [3 * params.lattice_const, 0, 0],
            lengths=(2 * params.lattice_const, 3 * params.lattice_const),
        )


def test_segment_coupling_close_segments_flag(params):
    layout = decompose("1011", params)
    with pytest.warns(NearFieldWarning):
        # centers 2.5a apart, beta is 3a long: inside the validity bound
        value = segment_coupling(*layout.segments)
    assert np.isfinite(value)


# ---------------------------------------------------------------- resonance

def test_equal_segments_resonant(params):
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ResonantNeighborsWarning)
        layout = decompose("11011", params)
    assert transfer_resonance(*layout.segments) is Resonance.RESONANT


def test_different_lengths_blocked_for_axial_dipole(params):
    layout = decompose("1011", params)
    alpha, beta = layout.segments
    assert transfer_resonance(alpha, beta) is Resonance.BLOCKED
    # the energy gap |J| dwarfs the collective linewidth here
    gap = abs(alpha.superradiant.energy - beta.superradiant.energy)
    from excitonchain.constants import HBAR

    assert gap > 5 * HBAR * max(alpha.superradiant.gamma, beta.superradiant.gamma)


def test_magic_angle_restores_resonance(params):
    layout = decompose("1011", at_angle(params, MAGIC_ANGLE))
    assert transfer_resonance(*layout.segments) is Resonance.RESONANT


# ------------------------------------------------------------ initial state

def test_initial_state_occupations_and_coherences():
    state = InitialState.symmetric_pair(2, 0, 1)
    assert state.occupation(0) == pytest.approx(0.5)
    assert state.occupation(1) == pytest.approx(0.5)
    assert state.coherence(0, 1) == pytest.approx(0.5)

    both = InitialState.fully_excited(2)
    assert both.occupation(0) == 1.0
    assert both.coherence(0, 1) == 0.0

    single = InitialState.single(3, 1)
    assert single.occupation(1) == 1.0
    assert single.occupation(0) == 0.0
    assert single.coherence(0, 1) == 0.0


def test_initial_state_with_vacuum_component():
    amp = 1 / math.sqrt(2)
    state = InitialState({(0, 0): amp, (1, 0): amp})
    assert state.occupation(0) == pytest.approx(0.5)
    assert state.coherence(0, 1) == 0.0


def test_initial_state_validation():
    with pytest.raises(ValueError):
        InitialState({})
    with pytest.raises(ValueError):
        InitialState({(1, 0): 1.0, (1,): 0.0})  # inconsistent lengths
    with pytest.raises(ValueError):
        InitialState({(2, 0): 1.0})  # occupation beyond one excitation
    with pytest.raises(ValueError):
        InitialState({(1, 0): 0.9})  # not normalized


def test_coherence_hermiticity(rng):
    for _ in range(20):
        raw = rng.normal(size=4) + 1j * rng.normal(size=4)
        raw /= np.linalg.norm(raw)
        keys = [(0, 0), (1, 0), (0, 1), (1, 1)]
        state = InitialState(dict(zip(keys, raw)))
        assert state.coherence(0, 1) == pytest.approx(
            np.conj(state.coherence(1, 0))
        )


# ------------------------------------------------------------------ engine

def w_layout(params):
    return decompose("1011", params)


def z_obs(params, mult=100):
    return ObservationPoint(np.array([0.0, 0.0, mult * params.lattice_const]))


def window(params, obs, n=200):
    gamma = single_atom_rate(params)
    start = float(np.linalg.norm(obs.position)) / C_LIGHT
    return start + np.linspace(0, 5 / gamma, n)


def test_single_segment_reduces_to_mode_intensity(params):
    # a lone three-site chain, fully excited in its superradiant mode;
    # window starts at the segment's own wavefront arrival
    layout = decompose("111", params)
    obs = z_obs(params, 1000)
    center = layout.segments[0].center
    gamma = single_atom_rate(params)
    start = float(np.linalg.norm(obs.position - center)) / C_LIGHT
    times = start + np.linspace(0, 5 / gamma, 50)
    trace = intensity_trace(layout, InitialState.single(1, 0), obs, times)
    spec = ChainSpec(
        lattice_const=params.lattice_const,
        atom_energy=params.atom_energy,
        dipole_mag=params.dipole_mag,
        dipole_angle=params.dipole_angle,
        n_sites=3,
    )
    direct = mode_intensity(spec, 1, obs, times, source_center=center)
    assert np.allclose(trace.total, direct, rtol=1e-12, atol=0.0)


def test_product_state_has_no_cross_term(params):
    layout = w_layout(params)
    obs = z_obs(params)
    times = window(params, obs)
    trace = intensity_trace(layout, InitialState.fully_excited(2), obs, times)
    assert np.all(trace.per_term["G_12"] == 0.0)
    assert np.allclose(
        trace.total, trace.per_term["I_1"] + trace.per_term["I_2"], rtol=1e-12
    )


def test_superposition_state_oscillates(params):
    layout = w_layout(params)
    obs = z_obs(params)
    times = window(params, obs, 2000)
    trace = intensity_trace(
        layout, InitialState.symmetric_pair(2, 0, 1), obs, times
    )
    cross = trace.per_term["G_12"]
    assert np.max(np.abs(cross)) > 0.1 * np.max(trace.total)
    assert np.min(cross) < 0 < np.max(cross)


def test_total_equals_sum_of_terms(params, rng):
    layout = w_layout(params)
    obs = z_obs(params)
    times = window(params, obs, 64)
    for _ in range(5):
        raw = rng.normal(size=4) + 1j * rng.normal(size=4)
        raw /= np.linalg.norm(raw)
        state = InitialState(dict(zip([(0, 0), (1, 0), (0, 1), (1, 1)], raw)))
        trace = intensity_trace(layout, state, obs, times)
        summed = sum(trace.per_term.values())
        assert np.allclose(trace.total, summed, rtol=1e-12, atol=0.0)
        assert np.all(trace.total >= -1e-12 * np.max(trace.total))


def test_global_phase_invariance(params, rng):
    layout = w_layout(params)
    obs = z_obs(params)
    times = window(params, obs, 64)
    raw = rng.normal(size=4) + 1j * rng.normal(size=4)
    raw /= np.linalg.norm(raw)
    keys = [(0, 0), (1, 0), (0, 1), (1, 1)]
    base = intensity_trace(layout, InitialState(dict(zip(keys, raw))), obs, times)
    rotated = intensity_trace(
        layout,
        InitialState(dict(zip(keys, raw * np.exp(0.73j)))),
        obs,
        times,
    )
    assert np.allclose(base.total, rotated.total, rtol=1e-12, atol=0.0)


def test_cross_term_cauchy_schwarz(params, rng):
    # each ordering of the interference term is bounded by sqrt(I_i I_j);
    # the stored column holds both orderings, hence the factor 2
    layout = w_layout(params)
    obs = z_obs(params)
    times = window(params, obs, 256)
    for _ in range(10):
        raw = rng.normal(size=4) + 1j * rng.normal(size=4)
        raw /= np.linalg.norm(raw)
        state = InitialState(dict(zip([(0, 0), (1, 0), (0, 1), (1, 1)], raw)))
        coh_bound = math.sqrt(state.occupation(0) * state.occupation(1))
        assert abs(state.coherence(0, 1)) <= coh_bound * (1 + 1e-12)
        trace = intensity_trace(layout, state, obs, times)
        bound = 2.0 * np.sqrt(trace.per_term["I_1"] * trace.per_term["I_2"])
        assert np.all(np.abs(trace.per_term["G_12"]) <= bound * (1 + 1e-12) + 1e-300)


def test_three_segment_engine(params, rng):
    # three segments of lengths 1, 2, 3: all diagonal terms plus three
    # pairwise interference columns, summing to the total
    layout = decompose("101101110", params)
    assert [s.n_sites for s in layout.segments] == [1, 2, 3]
    obs = z_obs(params, 300)
    times = window(params, obs, 300) + layout.segments[2].length / C_LIGHT
    amp = 1 / math.sqrt(3)
    state = InitialState({
        (1, 0, 0): amp, (0, 1, 0): amp, (0, 0, 1): amp,
    })
    trace = intensity_trace(layout, state, obs, times)
    assert set(trace.per_term) == {"I_1", "I_2", "I_3", "G_12", "G_13", "G_23"}
    assert np.allclose(trace.total, sum(trace.per_term.values()), rtol=1e-12)
    assert np.all(trace.total >= 0.0)
    for pair in ("G_12", "G_13", "G_23"):
        assert np.max(np.abs(trace.per_term[pair])) > 0.0


def test_field_level_oracle(params, rng):
    # independent reconstruction of the detected intensity from the
    # per-segment complex field amplitudes: I = (eps0 c / 2) sum_ij
    # conj(a_i) a_j rho_ij (n_i . n_j), with a_i the retarded, decaying,
    # oscillating field envelope of segment i. This checks the assembled
    # per-term formulas at the field-operator level. The naive absolute
    # phases here are ~1e9 rad, so agreement is limited to ~1e-7.
    from excitonchain import geometry
    from excitonchain.constants import HBAR

    layout = decompose("101101110", params)
    obs = z_obs(params, 500)
    start = max(
        float(np.linalg.norm(obs.position - s.center)) for s in layout.segments
    ) / C_LIGHT
    times = start + np.linspace(0, 3 / single_atom_rate(params), 160)

    keys = [
        (a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)
    ]
    raw = rng.normal(size=8) + 1j * rng.normal(size=8)
    raw /= np.linalg.norm(raw)
    state = InitialState(dict(zip(keys, raw)))

    rho = np.array(
        [[state.coherence(i, j) for j in range(3)] for i in range(3)]
    )
    amps = []
    overlaps = np.zeros((3, 3))
    geos = [
        geometry(s.center, params.dipole_direction, obs) for s in layout.segments
    ]
    for seg, geo in zip(layout.segments, geos):
        mode = seg.superradiant
        omega = mode.energy / HBAR
        prefactor = (
            np.linalg.norm(mode.dipole_vec) * mode.energy**2
            / (4 * math.pi * EPSILON_0 * HBAR**2 * C_LIGHT**2)
            * math.sin(geo.phi) / geo.distance
        )
        elapsed = times - geo.retarded_delay
        amps.append(
            prefactor
            * np.exp(-1j * omega * elapsed - mode.gamma * elapsed / 2.0)
        )
    for i in range(3):
        for j in range(3):
            overlaps[i, j] = float(np.dot(geos[i].unit_n, geos[j].unit_n))

    oracle = np.zeros_like(times)
    for i in range(3):
        for j in range(3):
            oracle = oracle + (
                0.5 * EPSILON_0 * C_LIGHT * overlaps[i, j]
                * (np.conj(amps[i]) * amps[j] * rho[i, j]).real
            )

    engine = intensity_trace(layout, state, obs, times)
    scale = np.max(np.abs(engine.total))
    assert np.max(np.abs(engine.total - oracle)) < 1e-6 * scale


def test_intensity_point_matches_trace(params):
    layout = w_layout(params)
    obs = z_obs(params)
    t0 = float(window(params, obs, 3)[1])
    total, terms = intensity_point(
        layout, InitialState.symmetric_pair(2, 0, 1), obs, t0
    )
    assert total == pytest.approx(sum(terms.values()), rel=1e-12)
    assert set(terms) == {"I_1", "I_2", "G_12"}


def test_engine_rejects_mismatched_state(params):
    layout = w_layout(params)
    with pytest.raises(ValueError):
        intensity_trace(
            layout, InitialState.single(3, 0), z_obs(params), window(params, z_obs(params), 4)
        )


def test_engine_propagates_geometry_errors(params):
    layout = w_layout(params)
    off_plane = ObservationPoint(
        np.array([0.0, 1e-6, 100 * params.lattice_const])
    )
    with pytest.raises(UnsupportedGeometryError):
        intensity_trace(
            layout,
            InitialState.symmetric_pair(2, 0, 1),
            off_plane,
            np.array([1e-8, 2e-8]),
        )
