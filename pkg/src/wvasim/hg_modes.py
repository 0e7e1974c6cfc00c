"""One-dimensional Hermite-Gauss mode algebra at the beam waist.

The basis functions u_n(x) are the real waist-plane profiles, orthonormal
under integration over the transverse coordinate,

    u_n(x) = (2/pi)^(1/4) / sqrt(w0 2^n n!) * H_n(sqrt(2) x / w0) * exp(-x^2/w0^2),

a convention fixed by the ladder identities this module implements:

    x u_0(x) = (w0/2) u_1(x)
    x u_n(x) = (w0/2) (sqrt(n) u_{n-1}(x) + sqrt(n+1) u_{n+1}(x))

Beam tilt enters as a transverse phase exp(i k x); to first order in k*w0
it couples u_0 into u_1 (and u_1 into u_0, u_2), which is how a tilted
fundamental beam acquires a first-order-mode component.

Overlap integrals are evaluated by adaptive quadrature on [-8 w0, 8 w0];
the Gaussian tails beyond 8 w0 are below 1e-27 of the integrand, so the
finite window does not limit the 1e-12 absolute tolerance.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .errors import ModeTruncationError, NumericalError, SmallAngleError, SmallAngleWarning

# Basis truncation bound.  The physics needs only n <= 2; the headroom is
# for flipped-mode norm studies.
N_MAX = 16

_QUAD_SPAN = 8.0        # integration half-width, in units of w0
_QUAD_ABS_TOL = 1e-12
_QUAD_RESIDUAL_GATE = 1e-9


@dataclass(frozen=True)
class BeamGeometry:
    """Wavelength and fundamental-mode waist defining the 1-D basis."""

    wavelength: float
    waist_w0: float

    def __post_init__(self) -> None:
        if not (self.wavelength > 0.0 and np.isfinite(self.wavelength)):
            raise ValueError(f"wavelength must be positive, got {self.wavelength}")
        if not (self.waist_w0 > 0.0 and np.isfinite(self.waist_w0)):
            raise ValueError(f"waist_w0 must be positive, got {self.waist_w0}")


def _check_mode_index(n: int) -> int:
    if n != int(n) or n < 0:
        raise ValueError(f"mode index must be a non-negative integer, got {n!r}")
    if n > N_MAX:
        raise ModeTruncationError(f"mode index {n} exceeds truncation bound N_MAX={N_MAX}")
    return int(n)


def mode_amplitude(n: int, x, geometry: BeamGeometry):
    """Waist-plane amplitude u_n(x) in m^(-1/2).

    Accepts a scalar or an array of transverse positions.  Uses the
    normalized two-term Hermite recurrence, stable for all n <= N_MAX
    (the factorial form overflows much later, but the recurrence is
    exact arithmetic on normalized values either way).
    """
    n = _check_mode_index(n)
    xarr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xarr)):
        raise ValueError("transverse position x must be finite")
    w0 = geometry.waist_w0
    xi = np.sqrt(2.0) * xarr / w0
    # h_m = H_m / sqrt(2^m m!), so u_n = (2/pi)^(1/4)/sqrt(w0) h_n exp(-xi^2/2)
    h_prev = np.ones_like(xi)
    if n == 0:
        h_n = h_prev
    else:
        h_cur = np.sqrt(2.0) * xi
        for m in range(1, n):
            h_prev, h_cur = (
                h_cur,
                xi * np.sqrt(2.0 / (m + 1)) * h_cur - np.sqrt(m / (m + 1)) * h_prev,
            )
        h_n = h_cur
    out = (2.0 / np.pi) ** 0.25 / np.sqrt(w0) * h_n * np.exp(-((xarr / w0) ** 2))
    return out if out.ndim else float(out)


def _quad_checked(integrand, lo: float, hi: float) -> float:
    val, err = quad(integrand, lo, hi, epsabs=_QUAD_ABS_TOL, epsrel=1e-12, limit=200)
    if err > _QUAD_RESIDUAL_GATE:
        raise NumericalError(
            f"quadrature did not converge: residual estimate {err:.3e} on [{lo}, {hi}]"
        )
    return val


def overlap(m: int, n: int, geometry: BeamGeometry) -> float:
    """Full-line overlap integral of u_m and u_n; equals delta_mn."""
    m = _check_mode_index(m)
    n = _check_mode_index(n)
    span = _QUAD_SPAN * geometry.waist_w0

    def integrand(x: float) -> float:
        return mode_amplitude(m, x, geometry) * mode_amplitude(n, x, geometry)

    return _quad_checked(integrand, -span, span)


def split_overlap(m: int, n: int, geometry: BeamGeometry) -> float:
    """Signed half-line overlap, int_0^inf u_m u_n dx - int_-inf^0 u_m u_n dx.

    This is the coupling a mirror-split (two-detector difference) readout
    applies to the mode pair.  It vanishes by parity whenever m + n is even;
    the (1, 0) pair gives sqrt(2/pi).
    """
    m = _check_mode_index(m)
    n = _check_mode_index(n)
    if (m + n) % 2 == 0:
        # even integrand: the two signed halves cancel identically
        return 0.0
    span = _QUAD_SPAN * geometry.waist_w0

    def integrand(x: float) -> float:
        return mode_amplitude(m, x, geometry) * mode_amplitude(n, x, geometry)

    # odd-n-sum integrand is even about 0 in |x|: use 2 * positive half
    return 2.0 * _quad_checked(integrand, 0.0, span)


@dataclass
class ModeExpansion:
    """Complex coefficients of a transverse field over the truncated basis.

    Coefficients beyond len(coeffs) - 1 are implicitly zero.  The norm bound
    sum |c_n|^2 <= 1 + 1e-6 applies to expansions of normalized physical
    fields only; operator outputs such as x * field carry dimensionful
    coefficients and are exempt.
    """

    geometry: BeamGeometry
    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(1, dtype=complex))

    def __post_init__(self) -> None:
        arr = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if arr.size > N_MAX + 1:
            raise ModeTruncationError(
                f"expansion has {arr.size} coefficients, basis is truncated at n={N_MAX}"
            )
        self.coeffs = arr

    @property
    def n_max(self) -> int:
        return self.coeffs.size - 1

    def coefficient(self, n: int) -> complex:
        n = _check_mode_index(n)
        return complex(self.coeffs[n]) if n <= self.n_max else 0.0j

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def evaluate(self, x):
        """Reconstruct the field amplitude at transverse positions x."""
        total = np.zeros_like(np.asarray(x, dtype=float), dtype=complex)
        for n, c in enumerate(self.coeffs):
            if c != 0.0:
                total = total + c * mode_amplitude(n, x, self.geometry)
        return total


def pure_mode(n: int, geometry: BeamGeometry) -> ModeExpansion:
    """Expansion containing a single basis mode with unit coefficient."""
    n = _check_mode_index(n)
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[n] = 1.0
    return ModeExpansion(geometry, coeffs)


def flipped_mode(geometry: BeamGeometry, n_max: int = 9) -> ModeExpansion:
    """Expansion of sign(x) * u_0(x), the phase-plate-flipped fundamental.

    A half-plane phase plate turns a fundamental beam into this flipped
    profile; it is the practical stand-in for a true first-order mode.
    Even coefficients vanish by parity and are set to exact zeros; odd
    coefficients are the split overlaps with u_0, so c_1 = sqrt(2/pi)
    bit-for-bit.  The expansion converges slowly: the n <= 9 partial norm
    is about 0.838.
    """
    n_max = _check_mode_index(n_max)
    coeffs = np.zeros(n_max + 1, dtype=complex)
    for n in range(1, n_max + 1, 2):
        coeffs[n] = split_overlap(n, 0, geometry)
    exp = ModeExpansion(geometry, coeffs)
    if exp.norm_sq() > 1.0 + 1e-6:
        raise NumericalError(f"flipped-mode partial norm {exp.norm_sq()} exceeds 1")
    return exp


def multiply_by_x(e: ModeExpansion) -> ModeExpansion:
    """Apply the exact ladder relation for multiplication by x.

    Raises ModeTruncationError when the input's top nonzero coefficient
    sits at N_MAX, since the product would populate n = N_MAX + 1.
    """
    c = e.coeffs
    top = e.n_max
    if top >= N_MAX and c[top] != 0.0:
        raise ModeTruncationError(
            f"x * field would populate mode {top + 1} beyond N_MAX={N_MAX}"
        )
    w_half = e.geometry.waist_w0 / 2.0
    out = np.zeros(min(top + 2, N_MAX + 1), dtype=complex)
    for n in range(out.size):
        acc = 0.0j
        if n + 1 <= top:
            acc += np.sqrt(n + 1.0) * c[n + 1]
        if 0 <= n - 1 <= top:
            acc += np.sqrt(float(n)) * c[n - 1]
        out[n] = w_half * acc
    return ModeExpansion(e.geometry, out)


def apply_tilt(e: ModeExpansion, k: float) -> ModeExpansion:
    """First-order tilt coupling: field -> (1 + i k x) * field.

    Valid for |k| w0 << 1.  Warns above 0.1 and refuses at |k| w0 >= 1,
    where the first-order expansion of exp(i k x) is meaningless.
    """
    if not np.isfinite(k):
        raise ValueError("tilt wavenumber k must be finite")
    kw = abs(k) * e.geometry.waist_w0
    if kw >= 1.0:
        raise SmallAngleError(f"|k| w0 = {kw:.3g} >= 1: outside the first-order regime")
    if kw >= 0.1:
        warnings.warn(
            f"|k| w0 = {kw:.3g} >= 0.1: first-order tilt coupling degrades",
            SmallAngleWarning,
            stacklevel=2,
        )
    if k == 0.0:
        return ModeExpansion(e.geometry, e.coeffs.copy())
    ladder = multiply_by_x(e)
    n_out = max(e.coeffs.size, ladder.coeffs.size)
    out = np.zeros(n_out, dtype=complex)
    out[: e.coeffs.size] += e.coeffs
    out[: ladder.coeffs.size] += 1j * k * ladder.coeffs
    return ModeExpansion(e.geometry, out)


def apply_tilt_exact(e: ModeExpansion, k: float, n_max: int | None = None) -> ModeExpansion:
    """Quadrature projection of exp(i k x) * field onto the basis.

    Validation-only companion to apply_tilt: exact in k, two quadratures
    per coefficient, so much slower.
    """
    if n_max is None:
        n_max = min(e.n_max + 1, N_MAX)
    n_max = _check_mode_index(n_max)
    g = e.geometry
    span = _QUAD_SPAN * g.waist_w0
    out = np.zeros(n_max + 1, dtype=complex)
    for n in range(n_max + 1):
        def re_part(x: float, n=n) -> float:
            f = e.evaluate(np.array(x))
            un = mode_amplitude(n, x, g)
            return float(np.real(np.exp(1j * k * x) * f)) * un

        def im_part(x: float, n=n) -> float:
            f = e.evaluate(np.array(x))
            un = mode_amplitude(n, x, g)
            return float(np.imag(np.exp(1j * k * x) * f)) * un

        out[n] = _quad_checked(re_part, -span, span) + 1j * _quad_checked(im_part, -span, span)
    return ModeExpansion(g, out)
