"""Hermite-Gauss mode algebra: orthonormality, split overlaps, the flipped mode.

Walks through the transverse-mode machinery underneath the tilt sensor:
the waist-plane basis, the signed split-detection overlap sqrt(2/pi), the
phase-plate flipped mode and its slow expansion, and first-order tilt
coupling between the fundamental and first-order modes.

Run from the repository root:  python demos/01_mode_algebra.py
"""

import math
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import wvasim as w

# beam parameters used throughout the demos
geometry = w.BeamGeometry(wavelength=1064e-9, waist_w0=1.86e-3)
w0 = geometry.waist_w0

print("=== basis sanity ===")
print(f"u0(0)           = {w.mode_amplitude(0, 0.0, geometry):.6f}  (peak of the fundamental)")
print(f"u1(0)           = {w.mode_amplitude(1, 0.0, geometry):.6f}  (odd mode vanishes on axis)")
print(f"<u0|u0>         = {w.overlap(0, 0, geometry):.12f}")
print(f"<u0|u1>         = {w.overlap(0, 1, geometry):.2e}")
print(f"<u2|u2>         = {w.overlap(2, 2, geometry):.12f}")

print("\n=== split detection overlap ===")
a = w.split_overlap(1, 0, geometry)
print(f"split_overlap(1,0) = {a:.9f}   sqrt(2/pi) = {math.sqrt(2/math.pi):.9f}")
print(f"split_overlap(0,0) = {w.split_overlap(0, 0, geometry):.1f}   (even integrand cancels)")
print(f"split_overlap(2,0) = {w.split_overlap(2, 0, geometry):.1f}")

print("\n=== flipped mode sign(x) u0(x) ===")
fm = w.flipped_mode(geometry, n_max=15)
for n in range(0, 8):
    c = fm.coefficient(n)
    print(f"  c_{n} = {c.real:+.6f}")
print(f"captured power n<=9  : {w.flipped_mode(geometry, 9).norm_sq():.6f}")
print(f"captured power n<=15 : {fm.norm_sq():.6f}   (converges slowly toward 1)")
print(f"first-order-mode content c1^2 = {fm.coefficient(1).real**2:.4f}  (= 2/pi)")

print("\n=== tilt coupling at k*w0 = 1e-3 ===")
k = 1e-3 / w0
tilted = w.apply_tilt(w.pure_mode(0, geometry), k)
print(f"u0 beam tilted: c0 = {tilted.coefficient(0):.6g}, c1 = {tilted.coefficient(1):.6g}")
print(f"expected c1   = i k w0 / 2 = {1j * k * w0 / 2:.6g}")
tilted1 = w.apply_tilt(w.pure_mode(1, geometry), k)
print(
    f"u1 beam tilted: c0 = {tilted1.coefficient(0):.4g}, "
    f"c1 = {tilted1.coefficient(1):.4g}, c2 = {tilted1.coefficient(2):.4g}"
)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = np.linspace(-3.5 * w0, 3.5 * w0, 1200)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    for n in range(3):
        ax1.plot(xs / w0, w.mode_amplitude(n, xs, geometry) * math.sqrt(w0), label=f"u{n}")
    ax1.set_xlabel("x / w0")
    ax1.set_ylabel("amplitude (waist units)")
    ax1.set_title("waist-plane modes")
    ax1.legend()
    target = np.sign(xs) * w.mode_amplitude(0, xs, geometry)
    ax2.plot(xs / w0, target * math.sqrt(w0), "k--", label="sign(x) u0(x)")
    ax2.plot(xs / w0, fm.evaluate(xs).real * math.sqrt(w0), label="n<=15 reconstruction")
    ax2.set_xlabel("x / w0")
    ax2.set_title("flipped mode and truncated expansion")
    ax2.legend()
    fig.tight_layout()
    fig.savefig("demo_mode_algebra.png", dpi=120)
    print("\nwrote demo_mode_algebra.png")
except ImportError:
    print("\n(matplotlib not available; skipped the figure)")
