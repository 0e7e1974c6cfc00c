"""Monte Carlo photocurrent synthesis, Welch estimation, peak readout.

Statistical assertions run on frozen seeds; the quoted tolerances leave
several estimator standard deviations of margin at the configured
segment counts.
"""

import math
from dataclasses import replace

import numpy as np
import pytest

import wvasim as w
from wvasim.errors import ConfigError

GEOM = w.BeamGeometry(wavelength=1064e-9, waist_w0=1.86e-3)


def make_measurement(squeeze_db=0.0, tilt=7.83e-12, T=1.0, psi=0.0):
    return w.MeasurementConfig.from_powers(
        GEOM,
        w.OpticalPower(10e-3),
        w.OpticalPower(260e-6),
        input_phase_psi=psi,
        squeeze=w.squeezed_vacuum_db(squeeze_db),
        tilt_theta=tilt,
        lever_arm_l=12.77e-3,
        integration_time_T=T,
    )


def make_trace(mc, seed, n_segments, f_signal=4000.0, fs=16384.0, rbw=1.0, window="hann"):
    return w.TraceConfig.with_segments(
        mc, signal_frequency=f_signal, sample_rate=fs, rbw=rbw, seed=seed,
        n_segments=n_segments, window=window,
    )


class TestTraceConfig:
    def test_nyquist_enforced(self):
        with pytest.raises(ConfigError):
            make_trace(make_measurement(), seed=1, n_segments=16, f_signal=9000.0)

    def test_segment_length_floor(self):
        with pytest.raises(ConfigError):
            w.TraceConfig(
                measurement=make_measurement(),
                signal_frequency=100.0,
                sample_rate=1000.0,
                duration=10.0,
                rbw=100.0,  # segment length 10 < 16
                seed=1,
            )

    def test_rbw_versus_duration(self):
        with pytest.raises(ConfigError):
            w.TraceConfig(
                measurement=make_measurement(),
                signal_frequency=100.0,
                sample_rate=10000.0,
                duration=0.5,
                rbw=1.0,
                seed=1,
            )

    def test_window_enum(self):
        with pytest.raises(ConfigError):
            make_trace(make_measurement(), seed=1, n_segments=16, window="kaiser")

    def test_segment_sizing(self):
        tc = make_trace(make_measurement(), seed=1, n_segments=64)
        assert tc.segment_length == 16384
        assert tc.n_samples == 16384 * 65 // 2


class TestSimulatePhotocurrent:
    def test_deterministic(self):
        tc = make_trace(make_measurement(), seed=42, n_segments=16)
        a = w.simulate_photocurrent(tc)
        b = w.simulate_photocurrent(tc)
        assert np.array_equal(a.samples, b.samples)

    def test_seed_changes_record(self):
        mc = make_measurement()
        a = w.simulate_photocurrent(make_trace(mc, seed=1, n_segments=16))
        b = w.simulate_photocurrent(make_trace(mc, seed=2, n_segments=16))
        assert not np.array_equal(a.samples, b.samples)

    def test_zero_noise_mode_is_pure_tone(self):
        mc = make_measurement(tilt=7.83e-12)
        tc = make_trace(mc, seed=3, n_segments=16)
        series = w.simulate_photocurrent(tc, include_noise=False)
        t = np.arange(series.samples.size) / tc.sample_rate
        amp = w.signal_amplitude(mc)
        expected = amp * np.sin(2.0 * np.pi * tc.signal_frequency * t)
        assert np.array_equal(series.samples, expected)
        assert np.max(np.abs(series.samples)) == pytest.approx(amp, rel=1e-12)

    def test_sample_variance_matches_analytic(self):
        # >= 1e6 samples; relative chi^2 spread ~ sqrt(2/n) ~ 0.14%
        mc = make_measurement(tilt=0.0)
        tc = make_trace(mc, seed=8, n_segments=128)
        series = w.simulate_photocurrent(tc)
        assert series.samples.size >= 1_000_000
        analytic = w.noise_density(mc) * tc.sample_rate / 2.0
        assert np.var(series.samples) == pytest.approx(analytic, rel=0.02)

    def test_squeezed_variance_ratio(self):
        mc0 = make_measurement(tilt=0.0, squeeze_db=0.0)
        mc2 = make_measurement(tilt=0.0, squeeze_db=2.0)
        a = w.simulate_photocurrent(make_trace(mc0, seed=8, n_segments=128))
        b = w.simulate_photocurrent(make_trace(mc2, seed=8, n_segments=128))
        assert np.var(b.samples) / np.var(a.samples) == pytest.approx(
            10.0 ** -0.2, rel=1e-9
        )

    def test_signal_amplitude_mapping(self):
        # tone RMS equals the analytic mean rate for the configured tilt
        mc = make_measurement(tilt=7.83e-12)
        amp = w.signal_amplitude(mc)
        mean_rate = w.difference_statistics(mc).mean / mc.integration_time_T
        assert amp == pytest.approx(math.sqrt(2.0) * mean_rate, rel=1e-14)


class TestWelch:
    def test_white_noise_floor(self):
        rng = np.random.default_rng(5)
        series = w.TimeSeries(sample_rate=1e6, samples=rng.standard_normal(2**21))
        spectrum = w.welch_psd(series, rbw=1e6 / 4096.0)
        floor = float(np.median(spectrum.psd[spectrum.frequencies > 0.0]))
        assert floor == pytest.approx(2e-6, rel=0.03)

    def test_white_noise_floor_rect(self):
        rng = np.random.default_rng(6)
        series = w.TimeSeries(sample_rate=1e6, samples=rng.standard_normal(2**21))
        spectrum = w.welch_psd(series, rbw=1e6 / 4096.0, window="rect")
        floor = float(np.median(spectrum.psd[spectrum.frequencies > 0.0]))
        assert floor == pytest.approx(2e-6, rel=0.03)

    def test_tone_power(self):
        fs, f0, a = 1e6, 250e3, 0.1
        t = np.arange(2**20) / fs
        series = w.TimeSeries(sample_rate=fs, samples=a * np.sin(2.0 * np.pi * f0 * t))
        spectrum = w.welch_psd(series, rbw=fs / 4096.0)
        df = spectrum.rbw
        power = float(np.sum(spectrum.psd[np.abs(spectrum.frequencies - f0) <= 3 * df]) * df)
        assert power == pytest.approx(a * a / 2.0, rel=0.03)

    def test_zero_input_zero_spectrum(self):
        series = w.TimeSeries(sample_rate=1e4, samples=np.zeros(16384))
        spectrum = w.welch_psd(series, rbw=10.0)
        assert np.all(spectrum.psd == 0.0)

    def test_parseval(self):
        rng = np.random.default_rng(7)
        series = w.TimeSeries(sample_rate=1e4, samples=rng.standard_normal(2**18))
        spectrum = w.welch_psd(series, rbw=1e4 / 1024.0)
        total = float(np.sum(spectrum.psd) * spectrum.rbw)
        assert total == pytest.approx(float(np.var(series.samples)), rel=0.01)

    def test_too_few_segments_rejected(self):
        series = w.TimeSeries(sample_rate=1e4, samples=np.zeros(2048))
        with pytest.raises(ConfigError):
            w.welch_psd(series, rbw=10.0)  # 1000-sample segments, 3 averages

    def test_segment_too_short_rejected(self):
        series = w.TimeSeries(sample_rate=1e4, samples=np.zeros(4096))
        with pytest.raises(ConfigError):
            w.welch_psd(series, rbw=1000.0)

    def test_determinism(self):
        mc = make_measurement()
        tc = make_trace(mc, seed=9, n_segments=32)
        s1 = w.welch_psd(w.simulate_photocurrent(tc), tc.rbw)
        s2 = w.welch_psd(w.simulate_photocurrent(tc), tc.rbw)
        assert np.array_equal(s1.psd, s2.psd)
        assert np.array_equal(s1.frequencies, s2.frequencies)


class TestFloorCalibration:
    def test_monte_carlo_floor_matches_analytic(self):
        mc = make_measurement(tilt=0.0)
        tc = make_trace(mc, seed=12345, n_segments=64)
        spectrum = w.welch_psd(w.simulate_photocurrent(tc), tc.rbw)
        floor = w.floor_estimate(spectrum)
        level_db = 10.0 * math.log10(floor / w.noise_density(mc))
        assert abs(level_db) < 0.2

    def test_squeezed_floor_ratio(self):
        tc0 = make_trace(make_measurement(tilt=0.0, squeeze_db=0.0), seed=12345, n_segments=64)
        tc2 = make_trace(make_measurement(tilt=0.0, squeeze_db=2.0), seed=12345, n_segments=64)
        f0 = w.floor_estimate(w.welch_psd(w.simulate_photocurrent(tc0), tc0.rbw))
        f2 = w.floor_estimate(w.welch_psd(w.simulate_photocurrent(tc2), tc2.rbw))
        # identical standardized draws: the ratio is exact, not statistical
        assert 10.0 * math.log10(f2 / f0) == pytest.approx(-2.0, abs=1e-6)


class TestPeakSnr:
    def test_tone_readout_tracks_analytic(self):
        mc = make_measurement(tilt=7.83e-12)
        tc = make_trace(mc, seed=777, n_segments=256)
        reading = w.peak_snr(w.welch_psd(w.simulate_photocurrent(tc), tc.rbw), 4000.0)
        assert reading.snr_db == pytest.approx(w.snr_db(mc), abs=0.5)
        assert reading.snr_db == pytest.approx(23.9, abs=1.0)

    def test_squeezing_improvement_measured(self):
        tc0 = make_trace(make_measurement(squeeze_db=0.0), seed=777, n_segments=256)
        tc2 = make_trace(make_measurement(squeeze_db=2.0), seed=777, n_segments=256)
        r0 = w.peak_snr(w.welch_psd(w.simulate_photocurrent(tc0), tc0.rbw), 4000.0)
        r2 = w.peak_snr(w.welch_psd(w.simulate_photocurrent(tc2), tc2.rbw), 4000.0)
        assert r2.snr_db - r0.snr_db == pytest.approx(2.0, abs=0.3)

    def test_no_signal_reads_flat(self):
        mc = make_measurement(tilt=0.0)
        tc = make_trace(mc, seed=123, n_segments=1024)
        reading = w.peak_snr(w.welch_psd(w.simulate_photocurrent(tc), tc.rbw), 4000.0)
        assert abs(reading.snr_linear) < 0.25
        assert abs(reading.ratio_db) < 1.0

    def test_three_db_point_is_unit_snr(self):
        # configure the tilt for analytic SNR = 1 at RBW 16 Hz
        mc = make_measurement(T=1.0 / 16.0)
        theta_min = w.min_detectable_tilt(mc).min_tilt
        mc = replace(mc, tilt_theta=theta_min)
        assert w.snr(mc) == pytest.approx(1.0, rel=1e-9)
        tc = make_trace(mc, seed=2026, n_segments=8192, f_signal=4096.0, fs=65536.0, rbw=16.0)
        reading = w.peak_snr(w.welch_psd(w.simulate_photocurrent(tc), tc.rbw), 4096.0)
        assert reading.ratio_db == pytest.approx(10.0 * math.log10(2.0), abs=0.3)

    def test_off_bin_tone_readout(self):
        # 500 kHz tone is not a bin center at 30 kHz RBW; the integrated
        # readout still lands on the analytic value
        mc = make_measurement(T=1.0 / 30000.0)
        theta_min = w.min_detectable_tilt(mc).min_tilt
        mc = replace(mc, tilt_theta=theta_min)
        tc = make_trace(mc, seed=99, n_segments=4096, f_signal=500e3, fs=2.4e6, rbw=30e3)
        reading = w.peak_snr(w.welch_psd(w.simulate_photocurrent(tc), tc.rbw), 500e3)
        assert reading.ratio_db == pytest.approx(10.0 * math.log10(2.0), abs=0.5)

    def test_rbw_halving_raises_ratio_3db(self):
        mc = make_measurement(tilt=7.83e-12)
        readings = {}
        for rbw in (8.0, 4.0):
            tc = make_trace(mc, seed=3, n_segments=256, rbw=rbw)
            spectrum = w.welch_psd(w.simulate_photocurrent(tc), tc.rbw)
            readings[rbw] = w.peak_snr(spectrum, 4000.0).snr_linear
        gain = 10.0 * math.log10(readings[4.0] / readings[8.0])
        assert gain == pytest.approx(10.0 * math.log10(2.0), abs=0.3)

    def test_signal_outside_grid_rejected(self):
        mc = make_measurement()
        tc = make_trace(mc, seed=4, n_segments=16)
        spectrum = w.welch_psd(w.simulate_photocurrent(tc), tc.rbw)
        with pytest.raises(ValueError):
            w.peak_snr(spectrum, 1e6)


class TestLocalPhaseScan:
    def test_coherent_flat(self):
        psi, var = w.local_phase_scan(w.vacuum(), 64)
        assert np.allclose(var, 1.0, rtol=0.0, atol=1e-15)

    def test_two_db_extremes(self):
        psi, var = w.local_phase_scan(w.squeezed_vacuum_db(2.0), 360)
        assert var.min() == pytest.approx(0.6310, abs=1e-4)
        assert var.max() == pytest.approx(1.5849, abs=1e-4)

    def test_minimum_uncertainty(self):
        psi, var = w.local_phase_scan(w.squeezed_vacuum_db(2.0), 360)
        assert var.min() * var.max() == pytest.approx(1.0, rel=1e-12)

    def test_shape_matches_formula(self):
        r = w.db_to_r(2.0)
        psi, var = w.local_phase_scan(w.squeezed_vacuum(r), 90)
        expected = np.exp(-2.0 * r) * np.cos(psi) ** 2 + np.exp(2.0 * r) * np.sin(psi) ** 2
        assert np.allclose(var, expected, rtol=1e-12)

    def test_needs_two_points(self):
        with pytest.raises(ValueError):
            w.local_phase_scan(w.vacuum(), 1)


class TestPostselectionSweep:
    PROBS = (0.26, 0.13, 0.052, 0.026)

    def test_monotone_in_probability(self):
        rows = w.postselection_sweep(make_measurement(), self.PROBS)
        snrs = [snr for _, snr in rows]
        assert all(a < b for a, b in zip(snrs, snrs[1:]))

    def test_single_entry_matches_direct(self):
        rows = w.postselection_sweep(make_measurement(), [0.026])
        direct = w.snr_db(make_measurement())
        assert rows[0][1] == pytest.approx(direct, abs=1e-12)

    def test_extreme_ratio_closed_form(self):
        rows = dict(w.postselection_sweep(make_measurement(), self.PROBS))
        ratio = 10.0 ** ((rows[0.026] - rows[0.26]) / 10.0)
        closed = ((1.0 - 0.026) / 0.026) / ((1.0 - 0.26) / 0.26)
        assert ratio == pytest.approx(closed, rel=1e-9)
        assert ratio == pytest.approx(13.1622, abs=1e-4)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            w.postselection_sweep(make_measurement(), [0.0])
        with pytest.raises(ValueError):
            w.postselection_sweep(make_measurement(), [1.0])
