import pytest

import wvasim as w


@pytest.fixture(scope="session")
def geometry() -> w.BeamGeometry:
    return w.BeamGeometry(wavelength=1064e-9, waist_w0=1.86e-3)


@pytest.fixture(scope="session")
def baseline_run() -> w.RunConfig:
    """All-defaults run: 10 mW / 260 uW, 4 kHz tone, 1 Hz RBW, 2 dB squeezing."""
    return w.parse_config()
