"""Loading, cleaning, and calendar-trimming of measured wind-speed records.

The rest of the toolkit assumes a strictly uniform sample grid, so everything
here funnels towards one product: a :class:`TimeSeries` whose ``values`` sit at
``start + i * dt`` with no holes.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from datetime import datetime, timedelta, timezone
from pathlib import Path

import numpy as np

from .errors import (
    DataQualityError,
    FormatError,
    InsufficientDataError,
)

SECONDS_PER_DAY = 86400.0

MISSING_POLICIES = ("drop", "interpolate", "fail")
TRIM_POLICIES = ("none", "integer-days", "integer-years")

# Timestamps must land on the inferred grid to within this fraction of dt.
_GRID_TOL = 1e-3


@dataclass
class TimeSeries:
    """Uniformly sampled real-valued record.

    values : samples (m/s), length >= 2, all finite
    dt     : sampling interval in seconds, > 0
    start  : optional calendar anchor (UTC) of the first sample
    label  : free text, usually the source file stem
    """

    values: np.ndarray
    dt: float
    start: datetime | None = None
    label: str = ""
    gaps_filled: int = 0
    calendar_trimmed: bool = False
    samples_trimmed: int = 0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 1 or self.values.size < 2:
            raise ValueError("TimeSeries needs a 1-d array of at least 2 samples")
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("TimeSeries values must be finite")
        if self.start is not None and self.start.tzinfo is None:
            self.start = self.start.replace(tzinfo=timezone.utc)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def duration(self) -> float:
        """Covered time span in seconds (n * dt, one slot per sample)."""
        return self.n * self.dt

    def timestamp(self, i: int) -> datetime:
        if self.start is None:
            raise ValueError("series has no calendar anchor")
        return self.start + timedelta(seconds=i * self.dt)


@dataclass(frozen=True)
class IngestConfig:
    timestamp_col: str = "timestamp"
    value_col: str = "speed"
    missing: str = "interpolate"
    max_gap: int = 3
    trim: str = "none"
    # None: naive timestamps are taken as UTC. Otherwise a fixed offset in
    # seconds applied to naive timestamps (explicit-offset policy).
    utc_offset: float | None = None

    def __post_init__(self):
        if self.missing not in MISSING_POLICIES:
            raise ValueError(f"missing policy must be one of {MISSING_POLICIES}")
        if self.trim not in TRIM_POLICIES:
            raise ValueError(f"trim policy must be one of {TRIM_POLICIES}")
        if self.max_gap < 1:
            raise ValueError("max_gap must be >= 1")


def _parse_timestamp(raw: str, cfg: IngestConfig) -> float:
    """Parse an ISO-8601 or epoch-seconds timestamp to UTC epoch seconds."""
    text = raw.strip()
    try:
        return float(text)
    except ValueError:
        pass
    try:
        stamp = datetime.fromisoformat(text.replace("Z", "+00:00"))
    except ValueError as exc:
        raise FormatError(f"unparseable timestamp {raw!r}") from exc
    if stamp.tzinfo is None:
        offset = 0.0 if cfg.utc_offset is None else cfg.utc_offset
        stamp = stamp.replace(tzinfo=timezone.utc) - timedelta(seconds=offset)
    return stamp.timestamp()


def _parse_value(raw: str) -> float:
    text = raw.strip()
    if not text:
        return math.nan
    try:
        return float(text)
    except ValueError as exc:
        raise FormatError(f"unparseable speed value {raw!r}") from exc


def _read_rows(path: Path, cfg: IngestConfig) -> tuple[np.ndarray, np.ndarray]:
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise FormatError(f"{path}: empty file")
        names = [name.strip() for name in reader.fieldnames]
        for col in (cfg.timestamp_col, cfg.value_col):
            if col not in names:
                raise FormatError(f"{path}: missing column {col!r}")
        times, values = [], []
        for row in reader:
            row = {k.strip(): v for k, v in row.items() if k is not None}
            times.append(_parse_timestamp(row[cfg.timestamp_col], cfg))
            values.append(_parse_value(row.get(cfg.value_col) or ""))
    if len(times) < 2:
        raise FormatError(f"{path}: need at least 2 data rows")
    return np.asarray(times), np.asarray(values)


def _grid_positions(times: np.ndarray) -> tuple[float, np.ndarray]:
    """Infer dt and map each timestamp onto the uniform grid.

    Gaps (integer multiples of dt) are allowed; off-grid timestamps are not.
    """
    diffs = np.diff(times)
    if np.any(diffs <= 0):
        raise FormatError("timestamps must be strictly increasing")
    # base interval = most frequent spacing (gaps are rarer multiples of it);
    # ties resolve to the smallest candidate
    candidates, counts = np.unique(np.round(diffs, 6), return_counts=True)
    dt = float(candidates[counts == counts.max()].min())
    slots = np.round((times - times[0]) / dt)
    if np.any(np.abs(times - times[0] - slots * dt) > _GRID_TOL * dt):
        raise FormatError("nonuniform sample spacing (timestamps off the dt grid)")
    if np.any(np.diff(slots) < 1):
        raise FormatError("duplicate timestamps on the sample grid")
    return dt, slots.astype(int)


def _fill_missing(grid: np.ndarray, policy: str, max_gap: int) -> tuple[np.ndarray, int]:
    """Apply the missing-value policy. Returns (values, gap count)."""
    missing = np.isnan(grid)
    n_missing = int(missing.sum())
    if n_missing == 0:
        return grid, 0
    if policy == "fail":
        raise DataQualityError(f"{n_missing} missing samples with missing=fail")
    if policy == "drop":
        if n_missing > 0.05 * grid.size:
            raise DataQualityError(
                f"{n_missing}/{grid.size} samples missing exceeds 5% drop budget"
            )
        # Dropped slots close up, so later samples shift earlier in time.
        # Prefer interpolate (or fail) when calendar alignment matters.
        return grid[~missing], n_missing
    # linear interpolation, bounded run length
    if missing[0] or missing[-1]:
        raise DataQualityError("cannot interpolate missing samples at record edges")
    run = _longest_missing_run(missing)
    if run > max_gap:
        raise DataQualityError(
            f"missing run of {run} samples exceeds interpolation limit {max_gap}"
        )
    idx = np.arange(grid.size)
    filled = grid.copy()
    filled[missing] = np.interp(idx[missing], idx[~missing], grid[~missing])
    return filled, n_missing


def _longest_missing_run(missing: np.ndarray) -> int:
    longest = current = 0
    for flag in missing:
        current = current + 1 if flag else 0
        longest = max(longest, current)
    return longest


def load_series(path: str | Path, cfg: IngestConfig | None = None) -> TimeSeries:
    """Load a `timestamp,speed` CSV into a uniform TimeSeries.

    Timestamps may be ISO-8601 or epoch seconds. Interior gaps are handled
    per ``cfg.missing``; the trim policy in ``cfg.trim`` is applied last.
    """
    cfg = cfg or IngestConfig()
    path = Path(path)
    if not path.exists():
        raise FormatError(f"{path}: no such file")
    times, raw_values = _read_rows(path, cfg)
    dt, slots = _grid_positions(times)

    grid = np.full(slots[-1] + 1, np.nan)
    grid[slots] = raw_values
    values, gaps = _fill_missing(grid, cfg.missing, cfg.max_gap)
    if values.size < 2:
        raise DataQualityError("fewer than 2 samples survive cleaning")

    # drop policy may remove leading samples; anchor at the first kept one
    first_slot = int(np.flatnonzero(~np.isnan(grid))[0]) if np.isnan(grid[0]) else 0
    start = datetime.fromtimestamp(times[0] + first_slot * dt, tz=timezone.utc)
    ts = TimeSeries(values=values, dt=dt, start=start, label=path.stem, gaps_filled=gaps)
    if cfg.trim != "none":
        ts = trim_to_calendar(ts, cfg.trim)
    return ts


def _add_years(anchor: datetime, years: int) -> datetime:
    """Calendar-year step; a Feb 29 anchor maps to Feb 28 in non-leap years."""
    try:
        return anchor.replace(year=anchor.year + years)
    except ValueError:
        return anchor.replace(year=anchor.year + years, day=28)


def trim_to_calendar(ts: TimeSeries, policy: str) -> TimeSeries:
    """Keep the longest prefix spanning whole days (or whole calendar years).

    Durations count n * dt seconds from the first sample. Yearly trimming
    follows the real calendar from the anchor, so leap days are included.
    """
    if policy == "none":
        return ts
    if policy not in TRIM_POLICIES:
        raise ValueError(f"unknown trim policy {policy!r}")
    if ts.start is None:
        raise ValueError("calendar trimming requires a calendar anchor")

    if policy == "integer-days":
        per_day = SECONDS_PER_DAY / ts.dt
        if abs(per_day - round(per_day)) > 1e-9 * per_day:
            raise ValueError("dt does not divide a day; cannot trim to whole days")
        per_day = round(per_day)
        n_keep = (ts.n // per_day) * per_day
        if n_keep < per_day:
            raise InsufficientDataError("record shorter than one whole day")
    else:
        start_epoch = ts.start.timestamp()
        n_keep = 0
        step = 1
        while True:
            boundary = _add_years(ts.start, step).timestamp()
            samples = (boundary - start_epoch) / ts.dt
            if round(samples) > ts.n:
                break
            if abs(samples - round(samples)) > 1e-6:
                raise ValueError("year boundary does not land on the sample grid")
            n_keep = round(samples)
            step += 1
        if n_keep == 0:
            raise InsufficientDataError("record shorter than one whole year")

    if n_keep == ts.n and ts.calendar_trimmed:
        return ts
    return replace(
        ts,
        values=ts.values[:n_keep],
        calendar_trimmed=True,
        samples_trimmed=ts.samples_trimmed + (ts.n - n_keep),
    )


def write_series(ts: TimeSeries, path: str | Path) -> None:
    """Serialize to the same `timestamp,speed` CSV schema load_series reads.

    Values are written with shortest round-trip float formatting, so
    load(write(ts)) reproduces values and dt exactly.
    """
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["timestamp", "speed"])
        for i, value in enumerate(ts.values):
            if ts.start is not None:
                stamp = (ts.start + timedelta(seconds=i * ts.dt)).isoformat()
            else:
                stamp = repr(i * ts.dt)
            writer.writerow([stamp, repr(float(value))])
