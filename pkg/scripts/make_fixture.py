#!/usr/bin/env python3
"""Write the synthetic wind-speed fixtures used by the demos and the CLI.

Two fixtures:

* year    — one non-leap calendar year of hourly samples (N = 8760):
            Weibull(2, 8) noise plus a 2 m/s diurnal and a 1.2 m/s annual
            cosine. Same construction as the test suite's year_fixture.
* tenyear — ten hourly years, 2003-01-01 through 2012-12-31 trimmed to
            87648 rows (real UTC calendar, leap days included, no missing
            hours), with annual/diurnal cosines on Weibull noise. This is
            the shape of an hourly NDAWN-style export.
"""

import argparse
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from prft import TimeSeries, write_series


def year_values(n=8760, seed=2026, shape=2.0, scale=8.0, diurnal=2.0, annual=1.2):
    rng = np.random.default_rng(seed)
    t = np.arange(n)
    return (
        scale * rng.weibull(shape, n)
        + diurnal * np.cos(2 * np.pi * t / 24 + 0.7)
        + annual * np.cos(2 * np.pi * t / n + 0.3)
    )


def tenyear_values(n=87648, seed=2003):
    rng = np.random.default_rng(seed)
    t = np.arange(n)
    hours_per_year = 365.25 * 24
    return (
        8.0 * rng.weibull(2.0, n)
        + 2.0 * np.cos(2 * np.pi * t / 24 + 0.7)
        + 1.2 * np.cos(2 * np.pi * t / hours_per_year + 0.3)
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kind", choices=["year", "tenyear"], default="year")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", required=True, help="output CSV path")
    args = parser.parse_args()

    if args.kind == "year":
        values = year_values(seed=args.seed if args.seed is not None else 2026)
        start = datetime(2021, 1, 1, tzinfo=timezone.utc)
    else:
        values = tenyear_values(seed=args.seed if args.seed is not None else 2003)
        start = datetime(2003, 1, 1, tzinfo=timezone.utc)

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_series(TimeSeries(values=values, dt=3600.0, start=start, label=args.kind), out)
    print(f"wrote {values.size} hourly samples to {out}")


if __name__ == "__main__":
    main()
