"""Mach-Zehnder propagation, dark-port extraction, and postselection scalars.

The interferometer is two balanced beamsplitters around a differential
phase/tilt section.  A fundamental-mode coherent beam enters one port and
a first-order-mode squeezed vacuum the other; the nearly-dark output port
carries the postselected beam whose first-order-mode content holds the
tilt signal, amplified by the weak value cot(phi/2).

Conventions: global phases are dropped; all mean-field amplitudes are in
sqrt(photon) units for the configured integration time; the relative
input phase psi selects which squeezed-mode quadrature the difference
detection sees (psi = 0 locks onto the squeezed quadrature).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .hg_modes import BeamGeometry
from .quantum_state import OpticalPower, QuadratureState, photon_number_from_power, quadrature_variance

# Fraction of a flipped-mode beam's power residing in the true first-order
# mode; the rest is mode-mismatched and contributes vacuum noise.
FLIPPED_MODE_MATCH = 2.0 / math.pi

_POWER_PHASE_TOL = 1e-6
_SMALL_ANGLE_LIMIT = 0.1


def beamsplitter_transform(fields) -> np.ndarray:
    """Balanced beamsplitter, (1/sqrt2) [[1, i], [i, 1]]; unitary."""
    f = np.asarray(fields, dtype=complex)
    out = np.empty_like(f)
    out[0] = (f[0] + 1j * f[1]) / np.sqrt(2.0)
    out[1] = (1j * f[0] + f[1]) / np.sqrt(2.0)
    return out


def interaction_transform(fields, k: float, phi: float, x: float) -> np.ndarray:
    """Differential arm phase diag(e^{+i(kx + phi/2)}, e^{-i(kx + phi/2)})."""
    f = np.asarray(fields, dtype=complex)
    phase = np.exp(1j * (k * x + phi / 2.0))
    out = np.empty_like(f)
    out[0] = phase * f[0]
    out[1] = f[1] / phase
    return out


def mach_zehnder_transform(fields, k: float, phi: float, x: float) -> np.ndarray:
    """Full interferometer pass: beamsplitter, interaction, beamsplitter."""
    return beamsplitter_transform(interaction_transform(beamsplitter_transform(fields), k, phi, x))


def weak_value(phi: float) -> float:
    """Amplification factor cot(phi/2) of the postselected tilt signal.

    Diverges as phi -> 0; callers choosing tiny phi guard that themselves.
    The boundary phi = pi is allowed and gives exactly 0.
    """
    if not 0.0 < phi <= math.pi:
        raise ValueError(f"relative phase phi must lie in (0, pi], got {phi}")
    if phi == math.pi:
        return 0.0
    return math.cos(phi / 2.0) / math.sin(phi / 2.0)


def postselection_probability(phi: float) -> float:
    """Dark-port power fraction sin^2(phi/2)."""
    if not 0.0 < phi < math.pi:
        raise ValueError(f"relative phase phi must lie in (0, pi), got {phi}")
    return math.sin(phi / 2.0) ** 2


def phi_for_probability(p_f: float) -> float:
    """Relative phase giving dark-port fraction p_f; inverse of the above."""
    if not 0.0 < p_f < 1.0:
        raise ValueError(f"postselection probability must lie in (0, 1), got {p_f}")
    return 2.0 * math.asin(math.sqrt(p_f))


@dataclass(frozen=True)
class MeasurementConfig:
    """Full parameter set of one measurement run.

    relative_phase_phi is the canonical postselection angle; the stored
    powers must agree with it through p_f = sin^2(phi/2) to within 1e-6.
    tilt_theta is the (RMS) tilt of the modulation being measured and
    integration_time_T the detection integration time (1 / RBW).
    """

    geometry: BeamGeometry
    input_power: OpticalPower
    output_power: OpticalPower
    relative_phase_phi: float
    input_phase_psi: float
    squeeze: QuadratureState
    tilt_theta: float
    lever_arm_l: float
    integration_time_T: float
    flipped_mode_input: bool = False

    def __post_init__(self) -> None:
        if not 0.0 < self.relative_phase_phi < math.pi:
            raise ConfigError(
                f"relative_phase_phi must lie in (0, pi), got {self.relative_phase_phi}"
            )
        if self.output_power.watts > self.input_power.watts:
            raise ConfigError(
                f"output power {self.output_power.watts} W exceeds input "
                f"power {self.input_power.watts} W"
            )
        if self.input_power.watts <= 0.0:
            raise ConfigError("input power must be positive")
        p_powers = self.output_power.watts / self.input_power.watts
        p_phi = math.sin(self.relative_phase_phi / 2.0) ** 2
        if abs(p_powers - p_phi) > _POWER_PHASE_TOL:
            raise ConfigError(
                f"powers give p_f = {p_powers:.8f} but phi gives "
                f"sin^2(phi/2) = {p_phi:.8f}; inconsistent beyond {_POWER_PHASE_TOL}"
            )
        if self.lever_arm_l <= 0.0:
            raise ConfigError(f"lever_arm_l must be positive, got {self.lever_arm_l}")
        if self.integration_time_T <= 0.0:
            raise ConfigError(f"integration_time_T must be positive, got {self.integration_time_T}")
        k = self.wavenumber_k
        if not math.isfinite(k):
            raise ConfigError("tilt wavenumber k is not finite")
        if abs(k) * self.geometry.waist_w0 >= _SMALL_ANGLE_LIMIT:
            raise ConfigError(
                f"|k| w0 = {abs(k) * self.geometry.waist_w0:.3g} outside the "
                f"first-order regime (< {_SMALL_ANGLE_LIMIT})"
            )

    @classmethod
    def from_powers(
        cls,
        geometry: BeamGeometry,
        input_power: OpticalPower,
        output_power: OpticalPower,
        *,
        input_phase_psi: float = 0.0,
        squeeze: QuadratureState | None = None,
        tilt_theta: float = 0.0,
        lever_arm_l: float = 12.77e-3,
        integration_time_T: float = 1.0,
        flipped_mode_input: bool = False,
    ) -> "MeasurementConfig":
        """Build a config with phi derived from the power ratio."""
        if input_power.watts <= 0.0:
            raise ConfigError("input power must be positive")
        ratio = output_power.watts / input_power.watts
        if not 0.0 < ratio < 1.0:
            raise ConfigError(
                f"output/input power ratio {ratio:.6g} must lie strictly in (0, 1)"
            )
        phi = phi_for_probability(ratio)
        return cls(
            geometry=geometry,
            input_power=input_power,
            output_power=output_power,
            relative_phase_phi=phi,
            input_phase_psi=input_phase_psi,
            squeeze=squeeze if squeeze is not None else QuadratureState(),
            tilt_theta=tilt_theta,
            lever_arm_l=lever_arm_l,
            integration_time_T=integration_time_T,
            flipped_mode_input=flipped_mode_input,
        )

    @property
    def wavenumber_k(self) -> float:
        """Transverse momentum kick k = 2 pi sin(theta) / lambda."""
        return 2.0 * math.pi * math.sin(self.tilt_theta) / self.geometry.wavelength

    @property
    def postselection_prob(self) -> float:
        return math.sin(self.relative_phase_phi / 2.0) ** 2

    @property
    def photon_number(self) -> float:
        """Photons injected at the bright input port during T."""
        return photon_number_from_power(
            self.input_power, self.geometry.wavelength, self.integration_time_T
        )

    @property
    def dark_photon_number(self) -> float:
        """Postselected photons N' = N sin^2(phi/2) reaching the dark port."""
        return self.photon_number * self.postselection_prob

    @property
    def bright_photon_number(self) -> float:
        return self.photon_number * (1.0 - self.postselection_prob)


def effective_u1_variance(config: MeasurementConfig) -> float:
    """Noise variance of the first-order-mode quadrature the detector reads.

    With an ideal first-order squeezed input this is the plain quadrature
    variance at the locked phase psi.  A flipped-mode input only matches
    the first-order mode with power fraction 2/pi; the mismatched rest
    arrives as vacuum.
    """
    v = quadrature_variance(config.squeeze, config.input_phase_psi)
    if config.flipped_mode_input:
        v = FLIPPED_MODE_MATCH * v + (1.0 - FLIPPED_MODE_MATCH)
    return v


@dataclass(frozen=True)
class DarkPortState:
    """First-order description of the dark-port field.

    baseline_u0_amplitude is the residual fundamental-mode amplitude
    sin(phi/2) sqrt(N); signal_u1_amplitude the tilt-induced first-order
    amplitude cos(phi/2) sqrt(N) w0 k / 2, linear in k; their ratio is the
    weak-value-amplified coupling cot(phi/2) w0 k / 2.
    """

    baseline_u0_amplitude: float
    signal_u1_amplitude: complex
    noise_u1_variance: float
    dark_photon_number_Nprime: float


def dark_port_output(config: MeasurementConfig) -> DarkPortState:
    """Dark-port amplitudes for a measurement configuration."""
    n = config.photon_number
    half_phi = config.relative_phase_phi / 2.0
    sin_h, cos_h = math.sin(half_phi), math.cos(half_phi)
    k = config.wavenumber_k
    w0 = config.geometry.waist_w0
    baseline = sin_h * math.sqrt(n)
    signal = complex(cos_h * math.sqrt(n) * w0 * k / 2.0)
    noise_var = cos_h ** 2 * effective_u1_variance(config)
    return DarkPortState(
        baseline_u0_amplitude=baseline,
        signal_u1_amplitude=signal,
        noise_u1_variance=noise_var,
        dark_photon_number_Nprime=n * sin_h ** 2,
    )
