"""Command-line frontend: `prft generate|validate|report`.

Artifacts are plain CSV/JSON with `.` decimal separators and fixed column
orders (documented in the README), so downstream plotting never recomputes
any statistic.
"""

from __future__ import annotations

import argparse
import json
import math
import secrets
import sys
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .distribution import TargetDistribution, fit_empirical, fit_weibull, load_table, uniform_grid
from .engine import PrftOptions, generate, generate_ensemble, seed_stream_from
from .errors import PrftError
from .ingest import IngestConfig, TimeSeries, load_series, write_series
from .spectral import acf, periodogram
from .validate import MONTH_LABELS, ValidationReport, build_report

REPORT_SCHEMA_VERSION = 1
MANIFEST_SCHEMA_VERSION = 1

DEFAULT_LAGS = [12, 24, 48, 100]
PDF_BINS = 50
QQ_QUANTILES = 100


@dataclass
class RunConfig:
    input: Path | None = None
    dist: str = "empirical"
    tol: float = 1e-4
    max_iter: int = 1000
    seed: int | None = None
    ensemble: int = 1
    variant: str = "psd-exact"
    metric: str = "sorted-rmse"
    out: Path = Path(".")
    formats: list[str] = field(default_factory=lambda: ["json", "csv"])
    lags: list[int] = field(default_factory=lambda: list(DEFAULT_LAGS))
    ingest: IngestConfig = field(default_factory=IngestConfig)

    def __post_init__(self):
        if any(lag <= 0 for lag in self.lags):
            raise ValueError("lags must be positive")
        if self.ensemble < 1:
            raise ValueError("ensemble count must be >= 1")


def read_config_file(path: str | Path) -> dict[str, str]:
    """Flat `key = value` file mirroring the CLI flags (without `--`)."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return values


def _merged(args: argparse.Namespace, keys: dict[str, type]) -> dict:
    """Layer config-file values under explicit flags (flags win)."""
    file_values = read_config_file(args.config) if getattr(args, "config", None) else {}
    out = {}
    for key, convert in keys.items():
        dest = key.replace("-", "_")
        value = getattr(args, dest, None)
        if value is None and key in file_values:
            value = file_values[key]
        if value is None:
            continue
        out[dest] = convert(value) if isinstance(value, str) and convert is not str else value
    return out


def _parse_lags(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _parse_formats(text: str) -> list[str]:
    formats = [part.strip() for part in text.split(",") if part.strip()]
    for fmt in formats:
        if fmt not in ("json", "csv"):
            raise ValueError(f"unknown report format {fmt!r}")
    return formats


_GENERATE_KEYS = {
    "input": str,
    "dist": str,
    "tol": float,
    "max-iter": int,
    "seed": int,
    "ensemble": int,
    "variant": str,
    "metric": str,
    "out": str,
    "timestamp-col": str,
    "value-col": str,
    "missing": str,
    "max-gap": int,
    "trim": str,
    "utc-offset": float,
}

_VALIDATE_KEYS = {
    "obs": str,
    "syn": str.split,
    "lags": _parse_lags,
    "out": str,
    "format": _parse_formats,
    "timestamp-col": str,
    "value-col": str,
    "missing": str,
    "max-gap": int,
    "utc-offset": float,
}


def _ingest_config(values: dict) -> IngestConfig:
    kwargs = {}
    for src, dst in [
        ("timestamp_col", "timestamp_col"),
        ("value_col", "value_col"),
        ("missing", "missing"),
        ("max_gap", "max_gap"),
        ("trim", "trim"),
        ("utc_offset", "utc_offset"),
    ]:
        if src in values:
            kwargs[dst] = values.pop(src)
    return IngestConfig(**kwargs)


def _build_distribution(spec: str, ts: TimeSeries) -> TargetDistribution:
    if spec == "empirical":
        return fit_empirical(ts)
    if spec == "weibull":
        return fit_weibull(ts)
    if spec.startswith("table:"):
        return load_table(spec.split(":", 1)[1])
    raise ValueError(f"unknown distribution spec {spec!r}")


def _json_safe(obj):
    """Recursively replace non-finite floats with null for strict JSON."""
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else None
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    return obj


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(_json_safe(payload), indent=2) + "\n", encoding="utf-8")


def _write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format_cell(cell) for cell in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _format_cell(cell) -> str:
    if isinstance(cell, (float, np.floating)):
        return repr(float(cell)) if math.isfinite(cell) else ""
    return str(cell)


def cmd_generate(cfg: RunConfig) -> int:
    if cfg.input is None:
        raise ValueError("generate requires --input")
    started = time.perf_counter()
    ts = load_series(cfg.input, cfg.ingest)
    dist = _build_distribution(cfg.dist, ts)
    master_seed = cfg.seed if cfg.seed is not None else secrets.randbits(63)
    opts = PrftOptions(
        seed=master_seed,
        tol=cfg.tol,
        max_iter=cfg.max_iter,
        convergence_metric=cfg.metric,
        output_variant=cfg.variant,
    )

    cfg.out.mkdir(parents=True, exist_ok=True)
    if cfg.ensemble == 1:
        seeds = [master_seed]
        results = [generate(ts, dist, opts)]
        surrogate_files = ["surrogate.csv"]
    else:
        seeds = seed_stream_from(master_seed, cfg.ensemble)
        results = generate_ensemble(ts, dist, opts, cfg.ensemble, seeds)
        surrogate_files = [f"surrogate_{i:03d}.csv" for i in range(cfg.ensemble)]

    failed = [i for i, r in enumerate(results) if r is None]
    if failed:
        raise PrftError(f"realizations failed: {failed}")

    for name, result in zip(surrogate_files, results):
        write_series(result.surrogate, cfg.out / name)
    trace_rows = []
    for member, result in enumerate(results):
        for iteration, value in enumerate(result.trace, start=1):
            trace_rows.append((member, iteration, value))
    _write_csv(cfg.out / "trace.csv", ["member", "iteration", "discrepancy"], trace_rows)

    manifest = {
        "schema_version": MANIFEST_SCHEMA_VERSION,
        "tool_version": __version__,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "input": str(cfg.input),
        "n": ts.n,
        "dt": ts.dt,
        "gaps_filled": ts.gaps_filled,
        "dist": cfg.dist,
        "tol": cfg.tol,
        "max_iter": cfg.max_iter,
        "variant": cfg.variant,
        "metric": cfg.metric,
        "master_seed": master_seed,
        "seeds": seeds,
        "iterations": [r.iterations_used for r in results],
        "converged": [r.converged for r in results],
        "termination": [r.termination for r in results],
        "final_discrepancy": [float(r.trace[-1]) for r in results],
        "surrogates": surrogate_files,
        "elapsed_s": time.perf_counter() - started,
    }
    _write_json(cfg.out / "manifest.json", manifest)
    print(f"wrote {len(surrogate_files)} surrogate(s) to {cfg.out}")
    return 0


def _report_payload(report: ValidationReport, obs: TimeSeries) -> dict:
    payload = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "tool_version": __version__,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "observed": obs.label,
        "n": obs.n,
        "dt": obs.dt,
        "n_members": report.n_members,
        "metrics": {
            "r2_cdf": report.r2_cdf,
            "rmse_cdf": report.rmse_cdf,
            "rmse_acf_at": {str(h): v for h, v in report.rmse_acf_at.items()},
            "rmse_psd": report.rmse_psd,
            "rmse_per": report.rmse_per,
        },
        "psd_peaks": {"obs": report.psd_peaks_obs, "syn": report.psd_peaks_syn},
        "qq": [[o, s] for o, s in report.qq_pairs],
        "asv": None,
    }
    if report.asv is not None:
        payload["asv"] = {
            "obs_mean": report.asv.mean.tolist(),
            "obs_std": report.asv.std.tolist(),
            "syn_mean": report.asv_syn.mean.tolist(),
            "syn_std": report.asv_syn.std.tolist(),
            "n_years": report.asv.n,
            "n_realizations": report.asv_syn.n,
        }
    return payload


def _write_plot_csvs(out: Path, obs: TimeSeries, syn: TimeSeries, report: ValidationReport,
                     lags: list[int]) -> None:
    # pdf overlay: shared equal-width bins across both records
    lo = min(obs.values.min(), syn.values.min())
    hi = max(obs.values.max(), syn.values.max())
    edges = np.linspace(lo, hi, PDF_BINS + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    obs_density, _ = np.histogram(obs.values, bins=edges, density=True)
    syn_density, _ = np.histogram(syn.values, bins=edges, density=True)
    _write_csv(
        out / "pdf_overlay.csv",
        ["bin_center", "obs_density", "syn_density"],
        zip(centers, obs_density, syn_density),
    )

    max_lag = round(max(lags) * 3600.0 / obs.dt)
    rho_obs = acf(obs.values, max_lag)
    rho_syn = acf(syn.values, max_lag)
    hours = np.arange(max_lag + 1) * obs.dt / 3600.0
    _write_csv(
        out / "acf.csv",
        ["lag", "lag_hours", "obs", "syn"],
        zip(range(max_lag + 1), hours, rho_obs, rho_syn),
    )

    freqs_hz, p_obs = periodogram(obs, "linear")
    _, p_syn = periodogram(syn, "linear")
    cph_obs_f, db_obs = periodogram(obs, "db_per_cph")
    _, db_syn = periodogram(syn, "db_per_cph")
    bins = np.arange(1, freqs_hz.size + 1)
    _write_csv(
        out / "periodogram.csv",
        ["bin", "freq_hz", "obs_psd", "syn_psd", "freq_cph", "obs_db", "syn_db"],
        zip(bins, freqs_hz, p_obs, p_syn, cph_obs_f, db_obs, db_syn),
    )

    us = uniform_grid(len(report.qq_pairs))
    _write_csv(
        out / "qq.csv",
        ["u", "observed", "surrogate"],
        ((u, o, s) for u, (o, s) in zip(us, report.qq_pairs)),
    )

    if report.asv is not None:
        _write_csv(
            out / "asv.csv",
            ["month", "obs_mean", "obs_std", "syn_mean", "syn_std"],
            (
                (MONTH_LABELS[m], report.asv.mean[m], report.asv.std[m],
                 report.asv_syn.mean[m], report.asv_syn.std[m])
                for m in range(12)
            ),
        )


def cmd_validate(obs_path: Path, syn_paths: list[Path], cfg: RunConfig) -> int:
    obs = load_series(obs_path, cfg.ingest)
    syn_list = [load_series(p, cfg.ingest) for p in syn_paths]
    for syn in syn_list:
        if syn.dt != obs.dt:
            raise ValueError(
                f"incompatible sampling: obs dt={obs.dt}, {syn.label} dt={syn.dt}"
            )
    report = build_report(obs, syn_list, cfg.lags, n_quantiles=QQ_QUANTILES)
    cfg.out.mkdir(parents=True, exist_ok=True)
    if "json" in cfg.formats:
        _write_json(cfg.out / "report.json", _report_payload(report, obs))
    if "csv" in cfg.formats:
        _write_plot_csvs(cfg.out, obs, syn_list[0], report, cfg.lags)
    print(f"validation report written to {cfg.out}")
    return 0


def _metric_rows(report: dict) -> list[tuple[str, str]]:
    metrics = report["metrics"]
    rows = [
        ("R2_CDF", f"{metrics['r2_cdf']:.6f}"),
        ("RMSE_CDF", f"{metrics['rmse_cdf']:.6g}"),
    ]
    for hours in sorted(metrics["rmse_acf_at"], key=int):
        rows.append((f"RMSE_ACF[{hours}h]", f"{metrics['rmse_acf_at'][hours]:.6g}"))
    rows.append(("RMSE_PSD[sqrt]", f"{metrics['rmse_psd']:.6g}"))
    rows.append(("RMSE_PER[dB]", f"{metrics['rmse_per']:.6g}"))
    return rows


def cmd_report(run_dir: Path, compare_dir: Path | None = None) -> int:
    manifest_path = run_dir / "manifest.json"
    if not manifest_path.exists():
        raise PrftError(f"{run_dir}: no manifest.json (not a completed run directory)")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))

    print(f"run: {run_dir}")
    print(f"  input      {manifest['input']}")
    print(f"  samples    {manifest['n']} @ dt={manifest['dt']} s")
    print(f"  seed       {manifest['master_seed']}")
    print(f"  converged  {sum(manifest['converged'])}/{len(manifest['converged'])}"
          f" (iterations: {manifest['iterations']})")

    columns = []
    for directory in [run_dir] + ([compare_dir] if compare_dir else []):
        report_path = Path(directory) / "report.json"
        if report_path.exists():
            columns.append((str(directory), json.loads(report_path.read_text("utf-8"))))
    if not columns:
        print("  (no report.json yet; run `prft validate` to compute metrics)")
        return 0

    headers = ["metric"] + [name for name, _ in columns]
    table = {}
    order = []
    for _, report in columns:
        for key, value in _metric_rows(report):
            if key not in table:
                table[key] = {}
                order.append(key)
            table[key][id(report)] = value
    widths = [max(len(h), 16) for h in headers]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    for key in order:
        cells = [key] + [table[key].get(id(report), "-") for _, report in columns]
        print("  ".join(c.ljust(w) for c, w in zip(cells, widths)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prft",
        description="Generate and validate surrogate wind-speed time series.",
    )
    parser.add_argument("--version", action="version", version=f"prft {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="synthesize surrogate series from a record")
    gen.add_argument("--config", help="flat key = value config file (flags override)")
    gen.add_argument("--input", help="input CSV (timestamp,speed)")
    gen.add_argument("--dist", help="empirical | weibull | table:<path>")
    gen.add_argument("--tol", type=float, help="convergence tolerance")
    gen.add_argument("--max-iter", type=int, help="iteration cap")
    gen.add_argument("--seed", type=int, help="master RNG seed (default: OS entropy)")
    gen.add_argument("--ensemble", type=int, help="number of realizations")
    gen.add_argument("--variant", choices=["psd-exact", "pdf-exact"])
    gen.add_argument("--metric", choices=["sorted-rmse", "max-abs"])
    gen.add_argument("--out", help="output directory")
    gen.add_argument("--timestamp-col")
    gen.add_argument("--value-col")
    gen.add_argument("--missing", choices=["drop", "interpolate", "fail"])
    gen.add_argument("--max-gap", type=int)
    gen.add_argument("--trim", choices=["none", "integer-days", "integer-years"])
    gen.add_argument("--utc-offset", type=float)

    val = sub.add_parser("validate", help="compute the fidelity report")
    val.add_argument("--config", help="flat key = value config file (flags override)")
    val.add_argument("--obs", help="observed record CSV")
    val.add_argument("--syn", nargs="+", help="surrogate CSV(s)")
    val.add_argument("--lags", help="ACF lags in hours, comma separated")
    val.add_argument("--out", help="output directory")
    val.add_argument("--format", help="comma list from {json,csv}")
    val.add_argument("--timestamp-col")
    val.add_argument("--value-col")
    val.add_argument("--missing", choices=["drop", "interpolate", "fail"])
    val.add_argument("--max-gap", type=int)
    val.add_argument("--utc-offset", type=float)

    rep = sub.add_parser("report", help="print the metric table of a run directory")
    rep.add_argument("run_dir")
    rep.add_argument("--compare", help="second run directory for side-by-side columns")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            values = _merged(args, _GENERATE_KEYS)
            ingest = _ingest_config(values)
            if "input" in values:
                values["input"] = Path(values["input"])
            if "out" in values:
                values["out"] = Path(values["out"])
            cfg = RunConfig(ingest=ingest, **values)
            return cmd_generate(cfg)
        if args.command == "validate":
            values = _merged(args, _VALIDATE_KEYS)
            ingest = _ingest_config(values)
            obs = values.pop("obs", None)
            syn = values.pop("syn", None)
            if obs is None:
                raise ValueError("validate requires --obs")
            if not syn:
                raise ValueError("validate requires --syn")
            if "format" in values:
                values["formats"] = values.pop("format")
            if "out" in values:
                values["out"] = Path(values["out"])
            cfg = RunConfig(ingest=ingest, **values)
            return cmd_validate(Path(obs), [Path(p) for p in syn], cfg)
        if args.command == "report":
            compare = Path(args.compare) if args.compare else None
            return cmd_report(Path(args.run_dir), compare)
        raise ValueError(f"unknown command {args.command!r}")
    except (PrftError, ValueError, OSError) as exc:
        message = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(message), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
