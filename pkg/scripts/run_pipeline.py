#!/usr/bin/env python3
"""End-to-end demo: fixture -> surrogates -> validation report -> summary.

Runs the whole pipeline through the CLI entry points so the emitted
artifacts are exactly what `prft generate` / `prft validate` / `prft report`
produce. Useful as a smoke experiment and to regenerate plot-ready CSVs
for the frontend.
"""

import argparse
import sys
from pathlib import Path

from prft.cli import main as prft_main

from make_fixture import year_values  # noqa: E402 (sibling script import)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True, help="run directory")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--ensemble", type=int, default=1)
    parser.add_argument("--tol", type=float, default=5e-4)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    fixture = out / "fixture_year.csv"
    if not fixture.exists():
        from datetime import datetime, timezone

        from prft import TimeSeries, write_series

        start = datetime(2021, 1, 1, tzinfo=timezone.utc)
        write_series(
            TimeSeries(values=year_values(), dt=3600.0, start=start, label="fixture"),
            fixture,
        )

    rc = prft_main([
        "generate",
        "--input", str(fixture),
        "--out", str(out),
        "--seed", str(args.seed),
        "--tol", str(args.tol),
        "--ensemble", str(args.ensemble),
    ])
    if rc != 0:
        return rc

    surrogates = (
        [str(out / "surrogate.csv")]
        if args.ensemble == 1
        else [str(out / f"surrogate_{i:03d}.csv") for i in range(args.ensemble)]
    )
    rc = prft_main(["validate", "--obs", str(fixture), "--syn", *surrogates, "--out", str(out)])
    if rc != 0:
        return rc
    return prft_main(["report", str(out)])


if __name__ == "__main__":
    sys.exit(main())
