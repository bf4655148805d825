"""Collective excitations of finite chains of trapped two-level atoms:
mode spectra, superradiant decay, far-field emission and multi-segment
interference with quantum beats."""

from .constants import (
    ANGSTROM,
    C_LIGHT,
    E_ANGSTROM,
    E_CHARGE,
    EPSILON_0,
    EV,
    HBAR,
    MAGIC_ANGLE,
    constants_dict,
)
from .spectrum import (
    ChainSpec,
    CollectiveMode,
    LatticeParams,
    LongChainWarning,
    Parity,
    all_modes,
    collective_dipole,
    damping_rate,
    hopping_energy,
    mode_energy,
    mode_profile,
    numeric_diagonalize,
    profile_vector,
    single_atom_rate,
)
from .emission import (
    DarkModeWarning,
    DegenerateGeometryError,
    EmissionGeometry,
    GeometryError,
    IntensityTrace,
    NearFieldWarning,
    ObservationPoint,
    UnsupportedGeometryError,
    angular_pattern,
    geometry,
    mode_intensity,
    radiated_power,
)
from .segments import (
    EmptyLayoutError,
    InitialState,
    Resonance,
    ResonantNeighborsWarning,
    Segment,
    SegmentLayout,
    ZeroSeparationError,
    decompose,
    dipole_dipole_energy,
    intensity_point,
    intensity_trace,
    segment_coupling,
    transfer_resonance,
)
from .two_segment import (
    BeatAnalysis,
    TwoSegmentTerms,
    extract_beats,
    far_zone_error,
    two_segment_exact,
    two_segment_far_zone,
    two_segment_trace,
    worked_example_layout,
)
from .config import ConfigError, RunConfig, load_config

__version__ = "0.1.0"
