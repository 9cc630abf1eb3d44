"""Fidelity descriptors: CDF fit statistics, ACF and spectrum errors, Q-Q
pairs, and the average seasonal variation with ensemble confidence bands.

All metrics are pure functions of their inputs and are exactly zero (or one,
for R^2) when the compared series are identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from .distribution import uniform_grid
from .engine import SurrogateResult
from .errors import DegenerateInputError
from .ingest import TimeSeries
from .spectral import acf, periodogram

MONTH_LABELS = (
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec",
)

ACF_ERROR_MODES = ("window", "pointwise")
PSD_ERROR_MODES = ("sqrt-psd", "periodogram-db")


@dataclass
class AsvTable:
    """Average seasonal variation: one row per calendar month (Jan..Dec).

    For a measured record, ``std`` is the inter-annual standard deviation of
    the per-year monthly means (NaN with fewer than 2 years). For an
    ensemble, ``mean``/``std`` are the across-realization statistics of the
    monthly means.
    """

    mean: np.ndarray
    std: np.ndarray
    kind: str = "observed"  # observed | ensemble
    n: int = 1  # years (observed) or realizations (ensemble)

    def __post_init__(self):
        self.mean = np.asarray(self.mean, dtype=float)
        self.std = np.asarray(self.std, dtype=float)
        if self.mean.shape != (12,) or self.std.shape != (12,):
            raise ValueError("ASV tables have exactly 12 rows")
        if np.any(self.std[np.isfinite(self.std)] < 0):
            raise ValueError("standard deviations must be nonnegative")


@dataclass
class ValidationReport:
    r2_cdf: float
    rmse_cdf: float
    rmse_acf_at: dict[int, float]
    rmse_psd: float
    rmse_per: float
    qq_pairs: list[tuple[float, float]]
    asv: AsvTable | None = None
    asv_syn: AsvTable | None = None
    psd_peaks_obs: list[dict] = field(default_factory=list)
    psd_peaks_syn: list[dict] = field(default_factory=list)
    n_members: int = 1


def _ecdf(sorted_values: np.ndarray, grid: np.ndarray) -> np.ndarray:
    return np.searchsorted(sorted_values, grid, side="right") / sorted_values.size


def cdf_fit(obs: TimeSeries, syn: TimeSeries) -> tuple[float, float]:
    """R^2 and RMSE of the synthetic ECDF against the observed ECDF.

    Both ECDFs are evaluated on the merged sorted grid of the two records'
    values (binning-free, so ties and tails are represented exactly).
    """
    if np.ptp(obs.values) == 0.0 or np.ptp(syn.values) == 0.0:
        raise DegenerateInputError("ECDF comparison needs nonconstant series")
    grid = np.union1d(obs.values, syn.values)
    f_obs = _ecdf(np.sort(obs.values), grid)
    f_syn = _ecdf(np.sort(syn.values), grid)
    residual = f_syn - f_obs
    ss_res = float(residual @ residual)
    centered = f_obs - f_obs.mean()
    ss_tot = float(centered @ centered)
    r2 = 1.0 - ss_res / ss_tot
    rmse = math.sqrt(np.mean(residual**2))
    return r2, rmse


def acf_error(
    obs: TimeSeries,
    syn: TimeSeries,
    lags_hours: list[int],
    mode: str = "window",
) -> dict[int, float]:
    """ACF error per requested lag, keyed by the lag in hours.

    window    : RMSE between the two ACFs over all integer lags in [0, L]
    pointwise : |rho_obs(L) - rho_syn(L)| at the single lag L
    """
    if mode not in ACF_ERROR_MODES:
        raise ValueError(f"mode must be one of {ACF_ERROR_MODES}")
    if obs.dt != syn.dt:
        raise ValueError("ACF comparison requires equal sampling intervals")
    lag_samples = {h: round(h * 3600.0 / obs.dt) for h in lags_hours}
    max_lag = max(lag_samples.values())
    if max_lag >= min(obs.n, syn.n):
        raise ValueError("largest requested lag must be below the record length")
    rho_obs = acf(obs.values, max_lag)
    rho_syn = acf(syn.values, max_lag)
    out = {}
    for hours, lag in lag_samples.items():
        if mode == "window":
            diff = rho_obs[: lag + 1] - rho_syn[: lag + 1]
            out[hours] = float(np.sqrt(np.mean(diff**2)))
        else:
            out[hours] = float(abs(rho_obs[lag] - rho_syn[lag]))
    return out


def psd_error(obs: TimeSeries, syn: TimeSeries, mode: str = "sqrt-psd") -> float:
    """RMSE between the two spectra over the retained bins.

    sqrt-psd       : compares square roots of the linear density (the
                     m s^-1/2 representation)
    periodogram-db : compares dB/(cycles/hour) periodograms; bins where
                     either series has zero power are excluded
    """
    if mode not in PSD_ERROR_MODES:
        raise ValueError(f"mode must be one of {PSD_ERROR_MODES}")
    if obs.n != syn.n or obs.dt != syn.dt:
        raise ValueError("spectrum comparison requires equal length and dt")
    if mode == "sqrt-psd":
        _, p_obs = periodogram(obs, "linear")
        _, p_syn = periodogram(syn, "linear")
        diff = np.sqrt(p_obs) - np.sqrt(p_syn)
        return float(np.sqrt(np.mean(diff**2)))
    _, db_obs = periodogram(obs, "db_per_cph")
    _, db_syn = periodogram(syn, "db_per_cph")
    finite = np.isfinite(db_obs) & np.isfinite(db_syn)
    if not np.any(finite):
        raise DegenerateInputError("no overlapping nonzero spectral bins")
    diff = db_obs[finite] - db_syn[finite]
    return float(np.sqrt(np.mean(diff**2)))


def qq_pairs(obs: TimeSeries, syn: TimeSeries, n_quantiles: int) -> list[tuple[float, float]]:
    """Matched empirical quantiles of both records on the midpoint grid."""
    if n_quantiles < 2:
        raise ValueError("n_quantiles must be >= 2")
    us = uniform_grid(n_quantiles)
    q_obs = np.quantile(obs.values, us, method="linear")
    q_syn = np.quantile(syn.values, us, method="linear")
    return list(zip(q_obs.tolist(), q_syn.tolist()))


def top_power_bins(ts: TimeSeries, count: int = 2) -> list[dict]:
    """The `count` strongest non-DC periodogram bins, strongest first."""
    freqs, power = periodogram(ts, "linear")
    order = np.argsort(power)[::-1][:count]
    return [
        {"bin": int(k + 1), "freq_hz": float(freqs[k]), "power": float(power[k])}
        for k in order
    ]


def _month_year_codes(n: int, dt: float, start: datetime) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized calendar month (0=Jan) and year of each sample, in UTC."""
    base = np.datetime64(start.astimezone(timezone.utc).replace(tzinfo=None), "ms")
    stamps = base + np.round(np.arange(n) * (dt * 1000.0)).astype("timedelta64[ms]")
    month_code = stamps.astype("datetime64[M]").astype(int)  # months since 1970-01
    return month_code % 12, month_code // 12


def monthly_means(values: np.ndarray, dt: float, start: datetime) -> np.ndarray:
    """Pooled per-calendar-month means of one series (12 entries)."""
    months, _ = _month_year_codes(values.size, dt, start)
    counts = np.bincount(months, minlength=12)
    if np.any(counts == 0):
        raise ValueError("record must cover all 12 calendar months")
    sums = np.bincount(months, weights=values, minlength=12)
    return sums / counts


def asv(ts: TimeSeries) -> AsvTable:
    """Average seasonal variation of a measured record.

    Monthly means pool all samples of that calendar month across the years;
    the inter-annual std is taken over the per-year monthly means (NaN when
    fewer than two years contribute).
    """
    if ts.start is None:
        raise ValueError("ASV requires a calendar anchor")
    months, years = _month_year_codes(ts.n, ts.dt, ts.start)
    mean = monthly_means(ts.values, ts.dt, ts.start)

    years = years - years.min()
    cell = years * 12 + months
    cell_counts = np.bincount(cell)
    cell_sums = np.bincount(cell, weights=ts.values)
    std = np.full(12, np.nan)
    for month in range(12):
        idx = np.arange(month, cell_counts.size, 12)
        present = idx[cell_counts[idx] > 0]
        yearly = cell_sums[present] / cell_counts[present]
        if yearly.size >= 2:
            std[month] = yearly.std(ddof=1)
    n_years = int(years.max()) + 1
    return AsvTable(mean=mean, std=std, kind="observed", n=n_years)


def _ensemble_table(series: list[tuple[np.ndarray, float]], anchor: datetime) -> AsvTable:
    rows = np.vstack([monthly_means(values, dt, anchor) for values, dt in series])
    return AsvTable(
        mean=rows.mean(axis=0),
        std=rows.std(axis=0),
        kind="ensemble",
        n=rows.shape[0],
    )


def asv_ensemble(results: list[SurrogateResult], anchor: datetime) -> AsvTable:
    """Across-realization mean and std of the monthly means."""
    if not results:
        raise ValueError("ensemble must contain at least one realization")
    lengths = {r.surrogate.n for r in results}
    dts = {r.surrogate.dt for r in results}
    if len(lengths) > 1 or len(dts) > 1:
        raise ValueError("all realizations must share length and dt")
    return _ensemble_table([(r.surrogate.values, r.surrogate.dt) for r in results], anchor)


def asv_series_ensemble(series: list[TimeSeries], anchor: datetime) -> AsvTable:
    """asv_ensemble for plain series (e.g. surrogates reloaded from disk)."""
    if not series:
        raise ValueError("ensemble must contain at least one series")
    return _ensemble_table([(s.values, s.dt) for s in series], anchor)


def asv_filter(result: SurrogateResult, target_asv: AsvTable, tol: float) -> bool:
    """Accept a realization iff its monthly means stay within tol of the
    target's, in every month."""
    surrogate = result.surrogate
    if surrogate.start is None:
        raise ValueError("surrogate has no calendar anchor")
    means = monthly_means(surrogate.values, surrogate.dt, surrogate.start)
    return bool(np.max(np.abs(means - target_asv.mean)) <= tol)


def build_report(
    obs: TimeSeries,
    syn_list: list[TimeSeries],
    lags_hours: list[int],
    n_quantiles: int = 100,
) -> ValidationReport:
    """Assemble the full descriptor battery against the first realization,
    with ASV bands taken across all provided realizations."""
    if not syn_list:
        raise ValueError("need at least one synthetic series")
    syn = syn_list[0]
    r2, rmse_cdf = cdf_fit(obs, syn)
    report = ValidationReport(
        r2_cdf=r2,
        rmse_cdf=rmse_cdf,
        rmse_acf_at=acf_error(obs, syn, lags_hours),
        rmse_psd=psd_error(obs, syn, "sqrt-psd"),
        rmse_per=psd_error(obs, syn, "periodogram-db"),
        qq_pairs=qq_pairs(obs, syn, n_quantiles),
        psd_peaks_obs=top_power_bins(obs),
        psd_peaks_syn=top_power_bins(syn),
        n_members=len(syn_list),
    )
    if obs.start is not None:
        try:
            report.asv = asv(obs)
            report.asv_syn = asv_series_ensemble(syn_list, obs.start)
        except ValueError:
            pass  # record does not span a full year; ASV stays unset
    return report
