"""Gaussian quadrature-state bookkeeping and photon/power conversions.

Quadrature variances are expressed in shot-noise units: a coherent state
(or vacuum) has variance 1 in every quadrature, a squeezed vacuum has
e^{-2r} along its squeezed quadrature and e^{+2r} along the conjugate.
All decibel figures in this package are power dB, 10*log10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.constants import c as _SPEED_OF_LIGHT
from scipy.constants import h as _PLANCK


@dataclass(frozen=True)
class QuadratureState:
    """Mean and quadrature-variance description of one optical mode.

    efficiency is a reserved loss knob that pulls both variances toward
    the vacuum level, variance -> 1 + efficiency * (variance - 1);
    the default 1.0 is lossless.
    """

    mean_x: float = 0.0
    mean_y: float = 0.0
    r: float = 0.0
    squeezed_quadrature_angle: float = 0.0
    efficiency: float = 1.0

    def __post_init__(self) -> None:
        if self.r < 0.0:
            raise ValueError(
                f"squeezing parameter r must be >= 0 (got {self.r}); orient "
                "anti-squeezing with squeezed_quadrature_angle instead"
            )
        if not 0.0 < self.efficiency <= 1.0:
            raise ValueError(f"efficiency must be in (0, 1], got {self.efficiency}")

    @property
    def is_coherent(self) -> bool:
        return self.r == 0.0


def vacuum() -> QuadratureState:
    return QuadratureState()


def coherent(mean_x: float, mean_y: float = 0.0) -> QuadratureState:
    return QuadratureState(mean_x=mean_x, mean_y=mean_y)


def squeezed_vacuum(r: float, angle: float = 0.0, efficiency: float = 1.0) -> QuadratureState:
    return QuadratureState(r=r, squeezed_quadrature_angle=angle, efficiency=efficiency)


def squeezed_vacuum_db(squeeze_db: float, angle: float = 0.0, efficiency: float = 1.0) -> QuadratureState:
    return squeezed_vacuum(db_to_r(squeeze_db), angle, efficiency)


def db_to_r(squeeze_db: float) -> float:
    """Squeezing parameter r for a quoted power-dB noise reduction.

    Defined so that e^{-2r} = 10^(-squeeze_db / 10); 2 dB gives r ~ 0.2303.
    """
    if squeeze_db < 0.0:
        raise ValueError(
            f"squeeze_db must be >= 0 (got {squeeze_db}); anti-squeezing is "
            "expressed via the quadrature angle, not a negative level"
        )
    return squeeze_db * math.log(10.0) / 20.0


def r_to_db(r: float) -> float:
    """Inverse of db_to_r."""
    if r < 0.0:
        raise ValueError(f"r must be >= 0, got {r}")
    return 20.0 * r / math.log(10.0)


def quadrature_variance(state: QuadratureState, measured_angle: float = 0.0) -> float:
    """Variance of the quadrature at measured_angle, in shot-noise units.

    e^{-2r} cos^2(d) + e^{+2r} sin^2(d) with d the angle from the squeezed
    quadrature; identically 1 for r = 0.
    """
    d = measured_angle - state.squeezed_quadrature_angle
    raw = math.exp(-2.0 * state.r) * math.cos(d) ** 2 + math.exp(2.0 * state.r) * math.sin(d) ** 2
    return 1.0 + state.efficiency * (raw - 1.0)


@dataclass(frozen=True)
class OpticalPower:
    """Non-negative optical power in watts."""

    watts: float

    def __post_init__(self) -> None:
        if not (self.watts >= 0.0 and math.isfinite(self.watts)):
            raise ValueError(f"power must be non-negative and finite, got {self.watts}")


def photon_number_from_power(power, wavelength: float, integration_time: float) -> float:
    """Mean photon number N = P * lambda * T / (h c) collected in time T."""
    watts = power.watts if isinstance(power, OpticalPower) else float(power)
    if watts <= 0.0:
        raise ValueError(f"power must be positive, got {watts}")
    if wavelength <= 0.0:
        raise ValueError(f"wavelength must be positive, got {wavelength}")
    if integration_time <= 0.0:
        raise ValueError(f"integration_time must be positive, got {integration_time}")
    return watts * wavelength * integration_time / (_PLANCK * _SPEED_OF_LIGHT)


def power_ratio_db(a: float, b: float) -> float:
    """10 log10(a / b) for positive powers."""
    if a <= 0.0 or b <= 0.0:
        raise ValueError(f"power ratio requires positive values, got {a}, {b}")
    return 10.0 * math.log10(a / b)
