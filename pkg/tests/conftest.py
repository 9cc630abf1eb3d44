from datetime import datetime, timezone

import numpy as np
import pytest

from prft import TimeSeries

# Canonical desk-scale fixture for the acceptance battery: one non-leap year
# of hourly samples, Weibull-marginal noise plus diurnal and annual cosines.
# scripts/make_fixture.py writes the same construction to CSV for the CLI.
FIXTURE_SEED = 2026
FIXTURE_N = 8760
FIXTURE_WEIBULL_SHAPE = 2.0
FIXTURE_WEIBULL_SCALE = 8.0
FIXTURE_DIURNAL_AMP = 2.0
FIXTURE_ANNUAL_AMP = 1.2
FIXTURE_START = datetime(2021, 1, 1, tzinfo=timezone.utc)


def build_fixture_values(
    n=FIXTURE_N,
    seed=FIXTURE_SEED,
    shape=FIXTURE_WEIBULL_SHAPE,
    scale=FIXTURE_WEIBULL_SCALE,
    diurnal=FIXTURE_DIURNAL_AMP,
    annual=FIXTURE_ANNUAL_AMP,
):
    rng = np.random.default_rng(seed)
    t = np.arange(n)
    return (
        scale * rng.weibull(shape, n)
        + diurnal * np.cos(2 * np.pi * t / 24 + 0.7)
        + annual * np.cos(2 * np.pi * t / n + 0.3)
    )


@pytest.fixture(scope="session")
def year_fixture() -> TimeSeries:
    return TimeSeries(
        values=build_fixture_values(),
        dt=3600.0,
        start=FIXTURE_START,
        label="year-fixture",
    )


@pytest.fixture(scope="session")
def white_noise_series() -> TimeSeries:
    rng = np.random.default_rng(77)
    return TimeSeries(
        values=rng.normal(8.0, 3.0, 4096),
        dt=3600.0,
        start=FIXTURE_START,
        label="white-noise",
    )
