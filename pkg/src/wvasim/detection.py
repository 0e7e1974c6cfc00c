"""Split-like detection statistics, SNR, and sensitivity conversions.

The dark-port beam is divided at x = 0 onto two photodetectors; their
photon-number difference reads the first-order-mode amplitude through the
signed overlap sqrt(2/pi).  In linearized form the difference over one
integration time T is

    mean     = sqrt(2/pi) N sin(phi/2) cos(phi/2) w0 k
    variance = N' V(psi),   N' = N sin^2(phi/2)

with V the (squeezed) quadrature variance in shot-noise units, so

    SNR = (2/pi) N cos^2(phi/2) w0^2 k^2 / V(psi)

which at the locked phase psi = 0 is (2/pi) (sqrt(N) cos(phi/2) w0 k e^r)^2.
Minimum detectable quantities solve SNR = 1 (a tone peak 3 dB above the
noise floor); per-root-hertz densities are the minima rescaled to T = 1 s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NumericalError
from .interferometer import MeasurementConfig, effective_u1_variance

# Signed split-detection overlap of the (1, 0) mode pair, sqrt(2/pi).
# hg_modes.split_overlap reproduces it by quadrature.
SPLIT_OVERLAP_10 = math.sqrt(2.0 / math.pi)


@dataclass(frozen=True)
class DifferenceStatistics:
    """First and second moments of the two-detector photon difference."""

    mean: float
    variance: float
    snr_linear: float
    snr_db: float


@dataclass(frozen=True)
class SensitivityReport:
    """Minimum detectable tilt/displacement and per-root-hertz densities."""

    min_tilt: float
    min_displacement: float
    tilt_density: float
    displacement_density: float


def difference_statistics(config: MeasurementConfig) -> DifferenceStatistics:
    """Photon-difference mean, variance, and SNR over time T."""
    n = config.photon_number
    half_phi = config.relative_phase_phi / 2.0
    mean = (
        SPLIT_OVERLAP_10
        * n
        * math.sin(half_phi)
        * math.cos(half_phi)
        * config.geometry.waist_w0
        * config.wavenumber_k
    )
    variance = config.dark_photon_number * effective_u1_variance(config)
    if variance <= 0.0:
        raise NumericalError("degenerate measurement: zero dark-port photon flux")
    snr_linear = mean * mean / variance
    snr_db = 10.0 * math.log10(snr_linear) if snr_linear > 0.0 else -math.inf
    return DifferenceStatistics(mean=mean, variance=variance, snr_linear=snr_linear, snr_db=snr_db)


def snr(config: MeasurementConfig) -> float:
    """Linear signal-to-noise ratio of the tilt measurement.

    (2/pi) N cos^2(phi/2) w0^2 k^2 / V; equal to the difference-statistics
    mean^2/variance identically.
    """
    n = config.photon_number
    cos_h = math.cos(config.relative_phase_phi / 2.0)
    v = effective_u1_variance(config)
    if config.dark_photon_number <= 0.0 or v <= 0.0:
        raise NumericalError("degenerate measurement: zero dark-port photon flux")
    return (
        (2.0 / math.pi)
        * n
        * cos_h ** 2
        * (config.geometry.waist_w0 * config.wavenumber_k) ** 2
        / v
    )


def snr_db(config: MeasurementConfig) -> float:
    value = snr(config)
    return 10.0 * math.log10(value) if value > 0.0 else -math.inf


def min_detectable_tilt(config: MeasurementConfig) -> SensitivityReport:
    """Tilt and displacement at SNR = 1, plus per-root-hertz densities.

    sin(theta_min) = (lambda / 2 pi) sqrt(pi/2) sqrt(V) / (sqrt(N) cos(phi/2) w0);
    densities are theta_min sqrt(T * 1 Hz), independent of T.
    """
    n = config.photon_number
    cos_h = math.cos(config.relative_phase_phi / 2.0)
    v = effective_u1_variance(config)
    sin_theta = (
        config.geometry.wavelength
        / (2.0 * math.pi)
        * math.sqrt(math.pi / 2.0)
        * math.sqrt(v)
        / (math.sqrt(n) * cos_h * config.geometry.waist_w0)
    )
    if sin_theta >= 1.0:
        raise NumericalError(f"minimum detectable tilt is unphysical: sin(theta) = {sin_theta:.3g}")
    theta_min = math.asin(sin_theta)
    d_min = config.lever_arm_l * sin_theta
    scale = math.sqrt(config.integration_time_T)  # to the 1 Hz bandwidth reference
    return SensitivityReport(
        min_tilt=theta_min,
        min_displacement=d_min,
        tilt_density=theta_min * scale,
        displacement_density=d_min * scale,
    )


def tilt_to_displacement(theta: float, lever_arm: float) -> float:
    """Beam-spot displacement d = l sin(theta) for a pivot at distance l."""
    if lever_arm <= 0.0:
        raise ValueError(f"lever_arm must be positive, got {lever_arm}")
    return lever_arm * math.sin(theta)


def displacement_to_tilt(displacement: float, lever_arm: float) -> float:
    """Inverse of tilt_to_displacement; requires |d / l| <= 1."""
    if lever_arm <= 0.0:
        raise ValueError(f"lever_arm must be positive, got {lever_arm}")
    ratio = displacement / lever_arm
    if abs(ratio) > 1.0:
        raise ValueError(f"|d / l| = {abs(ratio):.3g} > 1 has no tilt solution")
    return math.asin(ratio)
