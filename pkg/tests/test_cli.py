"""Config parsing, presets, subcommands, emission, exit codes."""

import json
import math

import numpy as np
import pytest

import wvasim as w
from wvasim import cli
from wvasim.config import DEFAULTS, build_run_config, merged_values
from wvasim.errors import ConfigError


class TestParseDocument:
    def test_units_and_values(self):
        doc = """
        # comment line
        input_power = 10 mW
        output_power = 260 uW
        wavelength = 1064 nm
        waist = 1.86 mm
        tilt = 7.83 prad
        rbw = 30 kHz   # trailing comment
        squeezing = 2 dB
        seed = 7
        window = rect
        sweep_values = 0.26, 0.13
        flipped_mode_input = true
        """
        values = w.parse_document(doc)
        assert values["input_power"] == pytest.approx(10e-3)
        assert values["output_power"] == pytest.approx(260e-6)
        assert values["wavelength"] == pytest.approx(1064e-9)
        assert values["waist"] == pytest.approx(1.86e-3)
        assert values["tilt"] == pytest.approx(7.83e-12)
        assert values["rbw"] == pytest.approx(30e3)
        assert values["squeezing"] == 2.0
        assert values["seed"] == 7
        assert values["window"] == "rect"
        assert values["sweep_values"] == (0.26, 0.13)
        assert values["flipped_mode_input"] is True

    def test_empty_document(self):
        assert w.parse_document("") == {}

    def test_unknown_key_named_with_line(self):
        with pytest.raises(ConfigError, match="line 2.*mystery"):
            w.parse_document("\nmystery = 1 mm\n")

    def test_missing_unit(self):
        with pytest.raises(ConfigError, match="waist"):
            w.parse_document("waist = 1.86")

    def test_unknown_unit(self):
        with pytest.raises(ConfigError, match="furlong"):
            w.parse_document("waist = 1.86 furlong")

    def test_duplicate_key(self):
        with pytest.raises(ConfigError, match="duplicate"):
            w.parse_document("seed = 1\nseed = 2")

    def test_malformed_line(self):
        with pytest.raises(ConfigError, match="line 1"):
            w.parse_document("just words")

    def test_bad_number(self):
        with pytest.raises(ConfigError):
            w.parse_document("waist = fat mm")

    def test_unit_conversion_safety(self):
        # same length through different units lands on the same SI value
        via_nm = w.parse_document("waist = 1860000 nm")["waist"]
        via_mm = w.parse_document("waist = 1.86 mm")["waist"]
        assert via_nm == pytest.approx(via_mm, rel=1e-12)


class TestPresets:
    def test_defaults_are_low_frequency_scenario(self):
        rc = w.parse_config()
        assert rc.values["input_power"] == 10e-3
        assert rc.values["output_power"] == 260e-6
        assert rc.values["wavelength"] == 1064e-9
        assert rc.values["waist"] == 1.86e-3
        assert rc.values["signal_frequency"] == 4e3
        assert rc.values["rbw"] == 1.0
        assert rc.values["squeezing"] == 2.0

    def test_empty_document_equals_default_preset(self):
        assert merged_values("fig3b_lowfreq", "") == merged_values(None, "")

    def test_high_frequency_preset(self):
        values = merged_values("fig5_highfreq", "")
        assert values["signal_frequency"] == 500e3
        assert values["rbw"] == 30e3
        assert values["input_power"] == 10e-3
        assert values["output_power"] == 260e-6

    def test_postselection_preset_is_unsqueezed(self):
        values = merged_values("fig2_postselection", "")
        assert values["squeezing"] == 0.0
        assert values["sweep_values"] == (0.26, 0.13, 0.052, 0.026)

    def test_unknown_preset(self):
        with pytest.raises(ConfigError):
            merged_values("fig9_nope", "")

    def test_document_overrides_preset(self):
        values = merged_values("fig5_highfreq", "rbw = 15 kHz")
        assert values["rbw"] == 15e3

    def test_built_config_consistency(self):
        rc = w.parse_config("", "fig5_highfreq")
        assert rc.measurement.integration_time_T == pytest.approx(1.0 / 30e3)
        assert rc.trace.segment_length == 80


class TestRunners:
    def test_snr_unsqueezed_reference(self):
        rc = w.parse_config("squeezing = 0 dB")
        result = cli.run("snr", rc)
        assert result.scalars["snr_db"] == pytest.approx(24.0, abs=0.5)
        assert result.scalars["snr_db"] == pytest.approx(23.9033, abs=1e-3)
        assert result.scalars["weak_value"] == pytest.approx(6.1206, abs=1e-3)

    def test_snr_improvement_scalar(self):
        result = cli.run("snr", w.parse_config())
        assert result.scalars["improvement_db"] == pytest.approx(2.0, abs=1e-9)

    def test_sensitivity_matches_detection(self):
        rc = w.parse_config()
        result = cli.run("sensitivity", rc)
        rep = w.min_detectable_tilt(rc.measurement)
        assert result.scalars["min_tilt_rad"] == rep.min_tilt
        assert result.scalars["displacement_density_m_rthz"] == rep.displacement_density
        assert result.scalars["tilt_density_rad_rthz_unsqueezed"] == pytest.approx(
            4.9957e-13, rel=1e-4
        )

    def test_sweep_monotone_table(self):
        result = cli.run("sweep", w.parse_config("", "fig2_postselection"), "fig2_postselection")
        assert result.table_columns == ["p_f", "snr_db"]
        assert len(result.table_rows) == 4
        snrs = [row[1] for row in result.table_rows]
        assert all(a < b for a, b in zip(snrs, snrs[1:]))

    def test_squeezing_sweep(self):
        rc = w.parse_config("sweep_kind = squeezing\nsweep_values = 0, 1, 2, 3")
        result = cli.run("sweep", rc)
        assert result.table_columns == ["squeeze_db", "snr_db"]
        snrs = [row[1] for row in result.table_rows]
        diffs = [b - a for a, b in zip(snrs, snrs[1:])]
        assert all(d == pytest.approx(1.0, abs=1e-9) for d in diffs)

    def test_phasescan_extremes(self):
        result = cli.run("phasescan", w.parse_config())
        assert result.scalars["variance_min"] == pytest.approx(10.0 ** -0.2, rel=1e-6)
        assert result.scalars["variance_max"] == pytest.approx(10.0 ** 0.2, rel=1e-6)
        assert result.scalars["min_times_max"] == pytest.approx(1.0, rel=1e-9)

    def test_modes_verification_table(self):
        result = cli.run("modes", w.parse_config())
        assert result.scalars["max_abs_error"] < 1e-9

    def test_spectrum_row_count_and_floor(self):
        rc = w.parse_config("squeezing = 0 dB\nn_segments = 64\nseed = 12345")
        result = cli.run("spectrum", rc)
        assert len(result.table_rows) == rc.trace.segment_length // 2 + 1
        assert abs(result.scalars["floor_db_rel_snl"]) < 0.2
        assert result.scalars["measured_snr_db"] == pytest.approx(
            result.scalars["analytic_snr_db"], abs=1.0
        )


class TestEmission:
    def test_csv_reproducible(self, tmp_path):
        rc = w.parse_config("n_segments = 16")
        result = cli.run("spectrum", rc)
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        cli.emit_csv(result, str(p1))
        cli.emit_csv(cli.run("spectrum", rc), str(p2))
        assert p1.read_bytes() == p2.read_bytes()

    def test_csv_columns(self, tmp_path):
        rc = w.parse_config("n_segments = 16")
        result = cli.run("spectrum", rc)
        path = tmp_path / "spectrum.csv"
        cli.emit_csv(result, str(path))
        lines = path.read_text().splitlines()
        assert lines[0] == "frequency_hz,psd_db_rel_snl,psd_per_hz"
        assert len(lines) == 1 + len(result.table_rows)

    def test_json_round_trip(self, tmp_path):
        rc = w.parse_config("n_segments = 16")
        result = cli.run("snr", rc)
        path = tmp_path / "out.json"
        cli.emit_json(result, str(path))
        loaded = json.loads(path.read_text())
        assert loaded == cli.result_to_dict(result)
        assert loaded["provenance"]["seed"] == rc.values["seed"]
        assert loaded["provenance"]["preset"] == "fig3b_lowfreq"

    def test_json_twelve_digits(self, tmp_path):
        rc = w.parse_config()
        result = cli.run("sensitivity", rc)
        path = tmp_path / "out.json"
        cli.emit_json(result, str(path))
        loaded = json.loads(path.read_text())
        value = loaded["scalars"]["min_tilt_rad"]
        assert value == float(f"{w.min_detectable_tilt(rc.measurement).min_tilt:.12g}")

    def test_scalar_csv(self, tmp_path):
        result = cli.run("snr", w.parse_config())
        path = tmp_path / "snr.csv"
        cli.emit_csv(result, str(path))
        lines = path.read_text().splitlines()
        assert lines[0] == "key,value"
        assert any(line.startswith("snr_db,") for line in lines)


class TestMainEntry:
    def test_snr_happy_path(self, capsys):
        assert cli.main(["snr"]) == 0
        out = capsys.readouterr().out
        assert "snr_db" in out

    def test_config_file(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("squeezing = 0 dB\n")
        assert cli.main(["snr", "--config", str(cfg)]) == 0
        out = capsys.readouterr().out
        assert "improvement_db = 0" in out

    def test_missing_config_file_exit_2(self, capsys):
        assert cli.main(["snr", "--config", "/no/such/file.cfg"]) == 2
        assert "config error" in capsys.readouterr().err

    def test_bad_config_content_exit_2(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("waist = 1.86 furlong\n")
        assert cli.main(["snr", "--config", str(cfg)]) == 2
        err = capsys.readouterr().err
        assert "furlong" in err

    def test_inconsistent_physics_exit_2(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("tilt = 1 mrad\n")  # far outside the first-order regime
        assert cli.main(["snr", "--config", str(cfg)]) == 2

    def test_unwritable_out_exit_4(self, tmp_path, capsys):
        out = "/nonexistent-dir-xyz/result.csv"
        assert cli.main(["snr", "--out", out]) == 4

    def test_bad_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["frobnicate"])
        assert exc.value.code == 2

    def test_seed_flag_changes_spectrum(self, tmp_path):
        cfg = tmp_path / "fast.cfg"
        cfg.write_text("n_segments = 16\n")
        a, b, c = (tmp_path / name for name in ("a.csv", "b.csv", "c.csv"))
        assert cli.main(["spectrum", "--config", str(cfg), "--seed", "1", "--out", str(a)]) == 0
        assert cli.main(["spectrum", "--config", str(cfg), "--seed", "2", "--out", str(b)]) == 0
        assert cli.main(["spectrum", "--config", str(cfg), "--seed", "1", "--out", str(c)]) == 0
        assert a.read_bytes() != b.read_bytes()
        assert a.read_bytes() == c.read_bytes()

    def test_out_dir_env(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("WVASIM_OUT_DIR", str(tmp_path))
        assert cli.main(["snr", "--out", "env.csv", "--format", "csv"]) == 0
        assert (tmp_path / "env.csv").exists()

    def test_json_format_flag(self, tmp_path):
        out = tmp_path / "r.json"
        assert cli.main(["sensitivity", "--out", str(out), "--format", "json"]) == 0
        loaded = json.loads(out.read_text())
        assert loaded["subcommand"] == "sensitivity"

    def test_preset_flag(self, tmp_path, capsys):
        assert cli.main(["sweep", "--preset", "fig2_postselection"]) == 0
        out = capsys.readouterr().out
        assert "table: 4 rows" in out
