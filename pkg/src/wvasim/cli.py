"""Command-line front end: scenario presets, sweeps, and CSV/JSON emission.

    wvasim <subcommand> [--config FILE] [--preset NAME] [--seed N]
                        [--out PATH] [--format csv|json]

Subcommands: snr, sensitivity, spectrum, sweep, phasescan, modes.
Exit codes: 0 success, 2 configuration error, 3 numerical error,
4 output I/O failure.  Diagnostics go to stderr, never into data files.
Identical invocations (same config and seed) produce byte-identical
output files; numbers are serialized with 12 significant digits.
Set WVASIM_OUT_DIR to redirect relative --out paths.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import __version__
from .config import DEFAULT_PRESET, PRESETS, build_run_config, merged_values, RunConfig
from .detection import min_detectable_tilt, snr as snr_linear_of, snr_db as snr_db_of
from .errors import ConfigError, NumericalError
from .hg_modes import flipped_mode, overlap, split_overlap
from .interferometer import weak_value
from .quantum_state import QuadratureState, squeezed_vacuum_db
from .spectra import (
    local_phase_scan,
    peak_snr,
    postselection_sweep,
    shot_noise_density,
    simulate_photocurrent,
    welch_psd,
)

_SUBCOMMANDS = ("snr", "sensitivity", "spectrum", "sweep", "phasescan", "modes")

_FLIPPED_PARTIAL_NORM_9 = 0.838231822798178  # sum |c_n|^2, odd n <= 9


@dataclass
class RunResult:
    """Everything one invocation produced, ready for emission."""

    subcommand: str
    preset: str
    seed: int
    version: str
    config: dict
    scalars: dict
    table_columns: list | None = None
    table_rows: list | None = None


def _round12(x):
    if isinstance(x, float):
        if math.isinf(x) or math.isnan(x):
            return x
        return float(f"{x:.12g}")
    return x


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _config_echo(values: dict) -> dict:
    return {
        k: (_round12(v) if isinstance(v, float) else list(v) if isinstance(v, tuple) else v)
        for k, v in sorted(values.items())
    }


def result_to_dict(result: RunResult) -> dict:
    doc = {
        "subcommand": result.subcommand,
        "provenance": {
            "preset": result.preset,
            "seed": result.seed,
            "version": result.version,
        },
        "config": _config_echo(result.config),
        "scalars": {k: _round12(v) for k, v in result.scalars.items()},
    }
    if result.table_rows is not None:
        doc["table"] = {
            "columns": list(result.table_columns),
            "rows": [[_round12(v) for v in row] for row in result.table_rows],
        }
    return doc


def emit_json(result: RunResult, path: str) -> None:
    with open(path, "w", newline="\n") as fh:
        json.dump(result_to_dict(result), fh, indent=2, sort_keys=True)
        fh.write("\n")


def emit_csv(result: RunResult, path: str) -> None:
    lines: list[str] = []
    if result.table_rows is not None:
        lines.append(",".join(result.table_columns))
        for row in result.table_rows:
            lines.append(",".join(_fmt(v) for v in row))
    else:
        lines.append("key,value")
        for key, value in result.scalars.items():
            lines.append(f"{key},{_fmt(value)}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _unsqueezed(rc: RunConfig):
    plain = QuadratureState(efficiency=rc.measurement.squeeze.efficiency)
    return replace(rc.measurement, squeeze=plain)


def _run_snr(rc: RunConfig):
    mc = rc.measurement
    squeezed_db = snr_db_of(mc)
    plain_db = snr_db_of(_unsqueezed(rc))
    scalars = {
        "photon_number": mc.photon_number,
        "dark_photon_number": mc.dark_photon_number,
        "postselection_probability": mc.postselection_prob,
        "weak_value": weak_value(mc.relative_phase_phi),
        "snr_linear": snr_linear_of(mc),
        "snr_db": squeezed_db,
        "snr_db_unsqueezed": plain_db,
        "improvement_db": squeezed_db - plain_db,
    }
    return scalars, None, None


def _run_sensitivity(rc: RunConfig):
    mc = rc.measurement
    rep = min_detectable_tilt(mc)
    rep0 = min_detectable_tilt(_unsqueezed(rc))
    scalars = {
        "integration_time_s": mc.integration_time_T,
        "min_tilt_rad": rep.min_tilt,
        "min_displacement_m": rep.min_displacement,
        "tilt_density_rad_rthz": rep.tilt_density,
        "displacement_density_m_rthz": rep.displacement_density,
        "min_tilt_rad_unsqueezed": rep0.min_tilt,
        "min_displacement_m_unsqueezed": rep0.min_displacement,
        "tilt_density_rad_rthz_unsqueezed": rep0.tilt_density,
        "displacement_density_m_rthz_unsqueezed": rep0.displacement_density,
    }
    return scalars, None, None


def _run_spectrum(rc: RunConfig):
    trace = rc.trace
    series = simulate_photocurrent(trace)
    spectrum = welch_psd(series, trace.rbw, trace.window)
    reading = peak_snr(spectrum, trace.signal_frequency)
    snl = shot_noise_density(rc.measurement)
    rel_db = 10.0 * np.log10(np.maximum(spectrum.psd, snl * 1e-30) / snl)
    rows = [
        (float(f), float(db), float(p))
        for f, db, p in zip(spectrum.frequencies, rel_db, spectrum.psd)
    ]
    scalars = {
        "n_averages": spectrum.n_averages,
        "rbw_hz": spectrum.rbw,
        "floor_db_rel_snl": 10.0 * math.log10(reading.floor_density / snl),
        "measured_snr_db": reading.snr_db,
        "measured_ratio_db": reading.ratio_db,
        "analytic_snr_db": snr_db_of(rc.measurement),
    }
    return scalars, ["frequency_hz", "psd_db_rel_snl", "psd_per_hz"], rows


def _run_sweep(rc: RunConfig):
    kind = rc.values["sweep_kind"]
    values = rc.values["sweep_values"]
    if kind == "postselection":
        rows = postselection_sweep(rc.measurement, values)
        columns = ["p_f", "snr_db"]
    elif kind == "squeezing":
        rows = []
        for level_db in values:
            if level_db < 0.0:
                raise ConfigError(f"squeezing sweep value must be >= 0 dB, got {level_db}")
            state = squeezed_vacuum_db(level_db, efficiency=rc.measurement.squeeze.efficiency)
            rows.append((float(level_db), snr_db_of(replace(rc.measurement, squeeze=state))))
        columns = ["squeeze_db", "snr_db"]
    else:
        raise ConfigError(f"sweep_kind must be 'postselection' or 'squeezing', got {kind!r}")
    scalars = {"sweep_kind": kind, "n_entries": len(rows)}
    return scalars, columns, rows


def _run_phasescan(rc: RunConfig):
    psi, var = local_phase_scan(rc.measurement.squeeze, rc.values["phase_scan_points"])
    rows = [(float(p), float(v), 10.0 * math.log10(v)) for p, v in zip(psi, var)]
    scalars = {
        "variance_min": float(var.min()),
        "variance_max": float(var.max()),
        "min_times_max": float(var.min() * var.max()),
    }
    return scalars, ["psi_rad", "variance_snl", "variance_db"], rows


def _run_modes(rc: RunConfig):
    g = rc.measurement.geometry
    expected_a = math.sqrt(2.0 / math.pi)
    measured_a = split_overlap(1, 0, g)
    flipped = flipped_mode(g, n_max=9)
    c1 = flipped.coefficient(1).real
    worst = 0.0
    for m in range(7):
        for n in range(m, 7):
            target = 1.0 if m == n else 0.0
            worst = max(worst, abs(overlap(m, n, g) - target))
    rows = [
        ("split_overlap_1_0", measured_a, expected_a, abs(measured_a - expected_a)),
        ("flipped_mode_c1", c1, expected_a, abs(c1 - expected_a)),
        ("flipped_partial_norm_n9", flipped.norm_sq(), _FLIPPED_PARTIAL_NORM_9,
         abs(flipped.norm_sq() - _FLIPPED_PARTIAL_NORM_9)),
        ("orthonormality_worst_n6", worst, 0.0, worst),
    ]
    scalars = {"max_abs_error": max(r[3] for r in rows)}
    return scalars, ["quantity", "value", "reference", "abs_error"], rows


_RUNNERS = {
    "snr": _run_snr,
    "sensitivity": _run_sensitivity,
    "spectrum": _run_spectrum,
    "sweep": _run_sweep,
    "phasescan": _run_phasescan,
    "modes": _run_modes,
}


def run(subcommand: str, rc: RunConfig, preset: str = DEFAULT_PRESET) -> RunResult:
    if subcommand not in _RUNNERS:
        raise ConfigError(f"unknown subcommand {subcommand!r}")
    scalars, columns, rows = _RUNNERS[subcommand](rc)
    return RunResult(
        subcommand=subcommand,
        preset=preset,
        seed=rc.values["seed"],
        version=__version__,
        config=rc.values,
        scalars=scalars,
        table_columns=columns,
        table_rows=rows,
    )


def _resolve_out(path: str) -> str:
    base = os.environ.get("WVASIM_OUT_DIR")
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _print_summary(result: RunResult) -> None:
    print(f"wvasim {result.subcommand}  (preset={result.preset}, seed={result.seed})")
    for key, value in result.scalars.items():
        print(f"  {key} = {_fmt(_round12(value) if isinstance(value, float) else value)}")
    if result.table_rows is not None:
        print(f"  table: {len(result.table_rows)} rows of ({', '.join(result.table_columns)})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wvasim",
        description="Weak-value-amplified tilt measurement simulator with squeezed-light noise reduction",
    )
    parser.add_argument("subcommand", choices=_SUBCOMMANDS)
    parser.add_argument("--config", metavar="FILE", help="flat key = value document")
    parser.add_argument("--preset", choices=sorted(PRESETS), default=None,
                        help=f"scenario preset (default {DEFAULT_PRESET})")
    parser.add_argument("--seed", type=int, default=None, help="override the RNG seed")
    parser.add_argument("--out", metavar="PATH", help="write result data to PATH")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--version", action="version", version=f"wvasim {__version__}")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = ""
        if args.config:
            try:
                with open(args.config) as fh:
                    text = fh.read()
            except OSError as exc:
                raise ConfigError(f"cannot read config file {args.config!r}: {exc}") from exc
        preset = args.preset if args.preset is not None else DEFAULT_PRESET
        values = merged_values(preset, text)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigError(f"seed must be non-negative, got {args.seed}")
            values["seed"] = args.seed
        rc = build_run_config(values)
        result = run(args.subcommand, rc, preset)
    except (ConfigError, ValueError) as exc:
        print(f"wvasim: config error: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, FloatingPointError) as exc:
        print(f"wvasim: numerical error: {exc}", file=sys.stderr)
        return 3

    _print_summary(result)
    if args.out:
        try:
            path = _resolve_out(args.out)
            if args.format == "json":
                emit_json(result, path)
            else:
                emit_csv(result, path)
        except OSError as exc:
            print(f"wvasim: cannot write output: {exc}", file=sys.stderr)
            return 4
        print(f"  wrote {args.format} to {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
