"""Seeded Monte Carlo difference-photocurrent synthesis and PSD estimation.

This module plays the role of the data-acquisition chain: it draws a
white-Gaussian shot-noise record for the dark-port difference current,
adds the tilt tone, and reads the averaged spectrum the way a spectrum
analyzer would.

Units and calibration
---------------------
Time-series samples are difference-count rates (photons/s).  The noise is
white with per-sample variance

    sigma^2 = (dark photon flux) * V * (sample_rate / 2)

so the one-sided PSD floor is flat at  flux * V  (variance accumulated per
unit integration time), V being the effective squeezed-quadrature variance.
The tilt tone has RMS amplitude equal to the analytic mean difference rate,
i.e. peak amplitude sqrt(2) * mean / T.  With the integration-time mapping
T = 1 / RBW, the tone power in one RBW bin over the floor power in one RBW
bin then reproduces the analytic SNR exactly, which is the calibration the
whole chain is tested against.

Reproducibility: noise is drawn chunk-by-chunk (one chunk per Welch
segment length) from numpy PCG64 generators seeded by
SeedSequence(seed).spawn(chunk_index), so identical configurations give
bit-identical records and runs with different squeezing share the same
standardized draws (their floors differ by exactly e^{-2r}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import welch as _scipy_welch

from .errors import ConfigError, NumericalError
from .detection import difference_statistics, snr as _analytic_snr
from .interferometer import MeasurementConfig, effective_u1_variance, phi_for_probability
from .quantum_state import OpticalPower, QuadratureState, quadrature_variance

_WINDOWS = ("hann", "rect")
_MIN_SEGMENT = 16
_MIN_AVERAGES = 8
_PEAK_EXCLUDE_RBW = 3.0  # half-width of the tone neighborhood, in RBW units


@dataclass(frozen=True)
class TraceConfig:
    """One Monte Carlo acquisition: physics plus sampling plus seed."""

    measurement: MeasurementConfig
    signal_frequency: float
    sample_rate: float
    duration: float
    rbw: float
    seed: int
    window: str = "hann"

    def __post_init__(self) -> None:
        if self.sample_rate <= 2.0 * self.signal_frequency:
            raise ConfigError(
                f"sample_rate {self.sample_rate} Hz violates Nyquist for "
                f"signal at {self.signal_frequency} Hz"
            )
        if self.signal_frequency <= 0.0:
            raise ConfigError("signal_frequency must be positive")
        if self.rbw < 1.0 / self.duration:
            raise ConfigError(
                f"rbw {self.rbw} Hz is finer than 1/duration = {1.0 / self.duration:.3g} Hz"
            )
        if self.segment_length < _MIN_SEGMENT:
            raise ConfigError(
                f"segment length round(sample_rate/rbw) = {self.segment_length} < {_MIN_SEGMENT}"
            )
        if self.window not in _WINDOWS:
            raise ConfigError(f"window must be one of {_WINDOWS}, got {self.window!r}")
        if self.seed < 0 or self.seed != int(self.seed):
            raise ConfigError(f"seed must be a non-negative integer, got {self.seed!r}")

    @property
    def segment_length(self) -> int:
        return round(self.sample_rate / self.rbw)

    @property
    def n_samples(self) -> int:
        return int(round(self.duration * self.sample_rate))

    @classmethod
    def with_segments(
        cls,
        measurement: MeasurementConfig,
        signal_frequency: float,
        sample_rate: float,
        rbw: float,
        seed: int,
        n_segments: int = 256,
        window: str = "hann",
    ) -> "TraceConfig":
        """Duration sized for n_segments half-overlapped Welch segments."""
        if n_segments < 1:
            raise ConfigError(f"n_segments must be >= 1, got {n_segments}")
        nper = round(sample_rate / rbw)
        n_samples = nper * (n_segments + 1) // 2
        return cls(
            measurement=measurement,
            signal_frequency=signal_frequency,
            sample_rate=sample_rate,
            duration=n_samples / sample_rate,
            rbw=rbw,
            seed=seed,
            window=window,
        )


@dataclass
class TimeSeries:
    sample_rate: float
    samples: np.ndarray


@dataclass
class SpectrumEstimate:
    """One-sided PSD on a uniform grid; rbw is the actual bin width."""

    frequencies: np.ndarray
    psd: np.ndarray
    rbw: float
    n_averages: int
    window: str


@dataclass(frozen=True)
class PeakReading:
    """Tone readout from a spectrum: floor, integrated tone power, ratios.

    ratio_linear is the ESA-style peak reading, (tone + noise-in-RBW) over
    noise-in-RBW; snr_linear = ratio_linear - 1 is the signal-only SNR.
    """

    floor_density: float
    tone_power: float
    snr_linear: float
    snr_db: float
    ratio_linear: float
    ratio_db: float


def noise_density(config: MeasurementConfig) -> float:
    """Analytic one-sided floor of the difference-rate PSD (model units)."""
    flux = config.dark_photon_number / config.integration_time_T
    return flux * effective_u1_variance(config)


def shot_noise_density(config: MeasurementConfig) -> float:
    """Floor of the same configuration with coherent (vacuum) noise."""
    return config.dark_photon_number / config.integration_time_T


def signal_amplitude(config: MeasurementConfig) -> float:
    """Peak amplitude of the difference-rate tone for the configured tilt.

    sqrt(2) times the analytic mean rate, so the tone RMS equals the mean.
    """
    stats = difference_statistics(config)
    return math.sqrt(2.0) * stats.mean / config.integration_time_T


def _noise_standardized(seed: int, chunk_length: int, n_samples: int) -> np.ndarray:
    """Unit-variance Gaussian record from per-chunk PCG64 streams."""
    n_chunks = -(-n_samples // chunk_length)  # ceil
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    parts = [np.random.default_rng(child).standard_normal(chunk_length) for child in children]
    return np.concatenate(parts)[:n_samples]


def simulate_photocurrent(trace: TraceConfig, include_noise: bool = True) -> TimeSeries:
    """Synthesize the difference-rate record for one acquisition.

    samples[i] = amp * sin(2 pi f t_i) + sigma * z_i with z standardized
    Gaussian draws; include_noise=False returns the bare sinusoid (useful
    for amplitude calibration checks).
    """
    n = trace.n_samples
    t = np.arange(n) / trace.sample_rate
    amp = signal_amplitude(trace.measurement)
    x = amp * np.sin(2.0 * math.pi * trace.signal_frequency * t)
    if include_noise:
        sigma = math.sqrt(noise_density(trace.measurement) * trace.sample_rate / 2.0)
        x = x + sigma * _noise_standardized(trace.seed, trace.segment_length, n)
    return TimeSeries(sample_rate=trace.sample_rate, samples=x)


def welch_psd(series: TimeSeries, rbw: float, window: str = "hann") -> SpectrumEstimate:
    """Averaged modified periodogram (50% overlap), one-sided density.

    Normalized so white noise of per-sample variance sigma^2 floors at
    sigma^2 / (sample_rate / 2) per Hz.
    """
    if window not in _WINDOWS:
        raise ConfigError(f"window must be one of {_WINDOWS}, got {window!r}")
    fs = series.sample_rate
    nper = round(fs / rbw)
    if nper < _MIN_SEGMENT:
        raise ConfigError(f"segment length {nper} < {_MIN_SEGMENT}; lower rbw or raise sample_rate")
    n = series.samples.size
    step = nper - nper // 2
    n_averages = 1 + (n - nper) // step if n >= nper else 0
    if n_averages < _MIN_AVERAGES:
        raise ConfigError(
            f"series gives {n_averages} Welch segments; need >= {_MIN_AVERAGES} for averaging"
        )
    freqs, psd = _scipy_welch(
        series.samples,
        fs=fs,
        window="hann" if window == "hann" else "boxcar",
        nperseg=nper,
        noverlap=nper // 2,
        detrend=False,
        scaling="density",
    )
    return SpectrumEstimate(
        frequencies=freqs,
        psd=psd,
        rbw=float(freqs[1] - freqs[0]),
        n_averages=n_averages,
        window=window,
    )


def peak_snr(spectrum: SpectrumEstimate, f_signal: float) -> PeakReading:
    """Read the tone at f_signal against the median noise floor.

    The floor is the median PSD over bins farther than 3 RBW from the
    tone; the tone power is the floor-subtracted PSD integrated over the
    +-3 RBW neighborhood (robust to window leakage and off-bin tones).
    """
    f = spectrum.frequencies
    p = spectrum.psd
    if not (f[0] <= f_signal <= f[-1]):
        raise ValueError(
            f"f_signal {f_signal} Hz outside the spectrum grid [{f[0]}, {f[-1]}] Hz"
        )
    df = spectrum.rbw
    near = np.abs(f - f_signal) <= _PEAK_EXCLUDE_RBW * df + df / 4.0
    floor_bins = p[~near & (f > 0.0)]
    if floor_bins.size < 8:
        raise ValueError("too few bins outside the tone neighborhood to estimate a floor")
    floor = float(np.median(floor_bins))
    if floor <= 0.0:
        raise NumericalError("floor estimate is non-positive; spectrum has no noise content")
    tone_power = float(np.sum(p[near] - floor) * df)
    snr_linear = tone_power / (floor * df)
    ratio_linear = snr_linear + 1.0
    return PeakReading(
        floor_density=floor,
        tone_power=tone_power,
        snr_linear=snr_linear,
        snr_db=10.0 * math.log10(snr_linear) if snr_linear > 0.0 else -math.inf,
        ratio_linear=ratio_linear,
        ratio_db=10.0 * math.log10(ratio_linear) if ratio_linear > 0.0 else -math.inf,
    )


def floor_estimate(spectrum: SpectrumEstimate, exclude_frequency: float | None = None) -> float:
    """Median-PSD floor, optionally excluding a tone neighborhood."""
    f = spectrum.frequencies
    keep = f > 0.0
    if exclude_frequency is not None:
        df = spectrum.rbw
        keep &= np.abs(f - exclude_frequency) > _PEAK_EXCLUDE_RBW * df + df / 4.0
    return float(np.median(spectrum.psd[keep]))


def local_phase_scan(squeeze: QuadratureState, n_points: int) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature variance swept over the local phase psi in [0, 2 pi).

    Traces the e^{-2r} cos^2 psi + e^{+2r} sin^2 psi arches a scanned
    homodyne phase shows; minimum e^{-2r}, maximum e^{+2r}.
    """
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    psi = np.linspace(0.0, 2.0 * math.pi, n_points, endpoint=False)
    variance = np.array([quadrature_variance(squeeze, float(a)) for a in psi])
    return psi, variance


def postselection_sweep(
    base: MeasurementConfig, probabilities
) -> list[tuple[float, float]]:
    """SNR (dB) versus postselection probability at fixed output power.

    Each entry rescales the input power to output / p_f and relocks phi
    accordingly; smaller p_f means more injected photons and higher SNR.
    """
    from dataclasses import replace

    rows: list[tuple[float, float]] = []
    for p in probabilities:
        if not 0.0 < p < 1.0:
            raise ValueError(f"postselection probability must lie in (0, 1), got {p}")
        cfg = replace(
            base,
            input_power=OpticalPower(base.output_power.watts / p),
            relative_phase_phi=phi_for_probability(p),
        )
        rows.append((float(p), 10.0 * math.log10(_analytic_snr(cfg))))
    return rows
