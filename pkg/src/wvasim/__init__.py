"""Weak-value-amplified optical tilt measurement with squeezed-light noise reduction.

An end-to-end numerical model of a Mach-Zehnder tilt sensor: Hermite-Gauss
mode algebra, weak-value postselection at the dark port, squeezed-vacuum
noise statistics, split-like difference detection, and spectrum-analyzer
style Monte Carlo signal-to-noise estimation.
"""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    ModeTruncationError,
    NumericalError,
    SmallAngleError,
    SmallAngleWarning,
)
from .hg_modes import (
    N_MAX,
    BeamGeometry,
    ModeExpansion,
    apply_tilt,
    apply_tilt_exact,
    flipped_mode,
    mode_amplitude,
    multiply_by_x,
    overlap,
    pure_mode,
    split_overlap,
)
from .quantum_state import (
    OpticalPower,
    QuadratureState,
    coherent,
    db_to_r,
    photon_number_from_power,
    power_ratio_db,
    quadrature_variance,
    r_to_db,
    squeezed_vacuum,
    squeezed_vacuum_db,
    vacuum,
)
from .interferometer import (
    DarkPortState,
    MeasurementConfig,
    beamsplitter_transform,
    dark_port_output,
    effective_u1_variance,
    interaction_transform,
    mach_zehnder_transform,
    phi_for_probability,
    postselection_probability,
    weak_value,
)
from .detection import (
    DifferenceStatistics,
    SensitivityReport,
    difference_statistics,
    displacement_to_tilt,
    min_detectable_tilt,
    snr,
    snr_db,
    tilt_to_displacement,
)
from .spectra import (
    PeakReading,
    SpectrumEstimate,
    TimeSeries,
    TraceConfig,
    floor_estimate,
    local_phase_scan,
    noise_density,
    peak_snr,
    postselection_sweep,
    shot_noise_density,
    signal_amplitude,
    simulate_photocurrent,
    welch_psd,
)
from .config import DEFAULTS, PRESETS, RunConfig, parse_config, parse_document
