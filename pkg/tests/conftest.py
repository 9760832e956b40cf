"""Shared fixtures: the six reference spaces used across the suite."""

from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from rispect import Lorentz, Orlicz, PiecewisePower, PurePower

settings.register_profile(
    "deterministic",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")


@pytest.fixture
def lorentz_sqrt() -> Lorentz:
    """Lorentz q=1 with parameter t**(1/2); all six indices are 0.5."""
    return Lorentz(1, PurePower(0.5))


@pytest.fixture
def lorentz_two() -> Lorentz:
    """Lorentz q=2 with parameter t; the L2-matched Lorentz space."""
    return Lorentz(2, PurePower(1.0))


@pytest.fixture
def l1() -> Lorentz:
    """Lorentz q=1 with parameter t, which is plain L1."""
    return Lorentz(1, PurePower(1.0))


@pytest.fixture
def quarter() -> Lorentz:
    """Piecewise parameter: exponent 1/4 near zero, 3/4 near infinity."""
    return Lorentz(1, PiecewisePower(0.25, 0.75))


@pytest.fixture
def quarter_mirror() -> Lorentz:
    """Mirrored piecewise parameter: 3/4 near zero, 1/4 near infinity."""
    return Lorentz(1, PiecewisePower(0.75, 0.25))


@pytest.fixture
def orlicz_square() -> Orlicz:
    """Orlicz space of N = t**2, i.e. L2."""
    return Orlicz(PurePower(2.0))


@pytest.fixture
def orlicz_piecewise() -> Orlicz:
    """Orlicz N with exponent 1.5 on (0,1] and 3 on [1,inf)."""
    return Orlicz(PiecewisePower(1.5, 3.0))


@pytest.fixture
def datadir() -> Path:
    return Path(__file__).parent / "data"
