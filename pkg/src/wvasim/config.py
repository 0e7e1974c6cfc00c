"""Flat key = value configuration documents, unit handling, and presets.

A document is plain text, one `key = value` per line, `#` comments
allowed.  Dimensional values require a unit suffix (`waist = 1.86 mm`);
dimensionless and integer keys take bare numbers; enums take bare words.
Unknown keys, missing units, and malformed lines are rejected with the
offending line number.  Every key has a documented default; the defaults
as a whole equal the fig3b_lowfreq preset, so an empty document is a
valid, fully specified run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError
from .hg_modes import BeamGeometry
from .interferometer import MeasurementConfig
from .quantum_state import OpticalPower, squeezed_vacuum_db
from .spectra import TraceConfig

_LENGTH_UNITS = {
    "m": 1.0, "cm": 1e-2, "mm": 1e-3, "um": 1e-6, "µm": 1e-6,
    "nm": 1e-9, "pm": 1e-12, "fm": 1e-15,
}
_POWER_UNITS = {"W": 1.0, "mW": 1e-3, "uW": 1e-6, "µW": 1e-6, "nW": 1e-9}
_FREQUENCY_UNITS = {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9}
_ANGLE_UNITS = {
    "rad": 1.0, "mrad": 1e-3, "urad": 1e-6, "µrad": 1e-6,
    "nrad": 1e-9, "prad": 1e-12, "deg": math.pi / 180.0,
}
_DB_UNITS = {"dB": 1.0}

# key -> (kind, unit table or None)
_KEY_KINDS: dict[str, tuple[str, dict | None]] = {
    "wavelength": ("quantity", _LENGTH_UNITS),
    "waist": ("quantity", _LENGTH_UNITS),
    "input_power": ("quantity", _POWER_UNITS),
    "output_power": ("quantity", _POWER_UNITS),
    "squeezing": ("quantity", _DB_UNITS),
    "input_phase": ("quantity", _ANGLE_UNITS),
    "tilt": ("quantity", _ANGLE_UNITS),
    "lever_arm": ("quantity", _LENGTH_UNITS),
    "signal_frequency": ("quantity", _FREQUENCY_UNITS),
    "sample_rate": ("quantity", _FREQUENCY_UNITS),
    "rbw": ("quantity", _FREQUENCY_UNITS),
    "efficiency": ("number", None),
    "flipped_mode_input": ("bool", None),
    "n_segments": ("int", None),
    "seed": ("int", None),
    "phase_scan_points": ("int", None),
    "window": ("word", None),
    "sweep_kind": ("word", None),
    "sweep_values": ("number_list", None),
}

# Scenario parameter sets.  Defaults (= fig3b_lowfreq): 10 mW in / 260 uW
# out (2.6% postselection), 1064 nm, 1.86 mm waist, 4 kHz tone at 1 Hz RBW,
# 2 dB squeezing.  fig5_highfreq moves the tone to 500 kHz at 30 kHz RBW;
# its tilt default 86.528 prad is the SNR = 1 tilt at that bandwidth, so
# the unsqueezed tone peaks 3 dB above the floor.
DEFAULTS: dict = {
    "wavelength": 1064e-9,
    "waist": 1.86e-3,
    "input_power": 10e-3,
    "output_power": 260e-6,
    "squeezing": 2.0,
    "input_phase": 0.0,
    "tilt": 7.83e-12,
    "lever_arm": 12.77e-3,
    "efficiency": 1.0,
    "flipped_mode_input": False,
    "signal_frequency": 4e3,
    "sample_rate": 16384.0,
    "rbw": 1.0,
    "n_segments": 256,
    "seed": 1064,
    "window": "hann",
    "sweep_kind": "postselection",
    "sweep_values": (0.26, 0.13, 0.052, 0.026),
    "phase_scan_points": 360,
}

PRESETS: dict[str, dict] = {
    "fig3b_lowfreq": {},
    "fig2_postselection": {"squeezing": 0.0},
    "fig4b_phase_scan": {"signal_frequency": 500e3, "sample_rate": 2.4e6, "rbw": 30e3},
    "fig5_highfreq": {
        "signal_frequency": 500e3,
        "sample_rate": 2.4e6,
        "rbw": 30e3,
        "tilt": 86.528e-12,
    },
}

DEFAULT_PRESET = "fig3b_lowfreq"


def _parse_value(key: str, raw: str, lineno: int):
    kind, units = _KEY_KINDS[key]
    if kind == "quantity":
        parts = raw.split()
        if len(parts) != 2:
            raise ConfigError(
                f"line {lineno}: key '{key}' needs '<number> <unit>', got {raw!r}"
            )
        num, unit = parts
        if unit not in units:
            raise ConfigError(
                f"line {lineno}: key '{key}': unknown unit {unit!r} "
                f"(expected one of {sorted(units)})"
            )
        try:
            return float(num) * units[unit]
        except ValueError:
            raise ConfigError(f"line {lineno}: key '{key}': bad number {num!r}") from None
    if kind == "number":
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"line {lineno}: key '{key}': bad number {raw!r}") from None
    if kind == "int":
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"line {lineno}: key '{key}': bad integer {raw!r}") from None
    if kind == "bool":
        lowered = raw.lower()
        if lowered in ("true", "1", "yes"):
            return True
        if lowered in ("false", "0", "no"):
            return False
        raise ConfigError(f"line {lineno}: key '{key}': bad boolean {raw!r}")
    if kind == "number_list":
        try:
            return tuple(float(tok) for tok in raw.replace(",", " ").split())
        except ValueError:
            raise ConfigError(f"line {lineno}: key '{key}': bad number list {raw!r}") from None
    return raw  # word


def parse_document(text: str) -> dict:
    """Parse a config document into a dict of SI-valued overrides."""
    values: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line.rstrip()!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _KEY_KINDS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = _parse_value(key, raw, lineno)
    return values


def merged_values(preset: str | None = None, text: str = "") -> dict:
    """Defaults, overlaid by a preset, overlaid by a document."""
    values = dict(DEFAULTS)
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r} (choose from {sorted(PRESETS)})")
        values.update(PRESETS[preset])
    values.update(parse_document(text))
    return values


@dataclass(frozen=True)
class RunConfig:
    """Merged SI values plus the physics and acquisition configs they build."""

    values: dict
    measurement: MeasurementConfig
    trace: TraceConfig


def build_run_config(values: dict) -> RunConfig:
    geometry = BeamGeometry(wavelength=values["wavelength"], waist_w0=values["waist"])
    if values["squeezing"] < 0.0:
        raise ConfigError(f"squeezing must be >= 0 dB, got {values['squeezing']}")
    squeeze = squeezed_vacuum_db(values["squeezing"], efficiency=values["efficiency"])
    rbw = values["rbw"]
    if rbw <= 0.0:
        raise ConfigError(f"rbw must be positive, got {rbw}")
    measurement = MeasurementConfig.from_powers(
        geometry,
        OpticalPower(values["input_power"]),
        OpticalPower(values["output_power"]),
        input_phase_psi=values["input_phase"],
        squeeze=squeeze,
        tilt_theta=values["tilt"],
        lever_arm_l=values["lever_arm"],
        integration_time_T=1.0 / rbw,
        flipped_mode_input=values["flipped_mode_input"],
    )
    trace = TraceConfig.with_segments(
        measurement,
        signal_frequency=values["signal_frequency"],
        sample_rate=values["sample_rate"],
        rbw=rbw,
        seed=values["seed"],
        n_segments=values["n_segments"],
        window=values["window"],
    )
    return RunConfig(values=values, measurement=measurement, trace=trace)


def parse_config(text: str = "", preset: str | None = None) -> RunConfig:
    """One-call form: parse a document over a preset and build the configs."""
    return build_run_config(merged_values(preset, text))
