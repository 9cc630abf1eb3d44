"""Surrogate generation core.

Initialization builds two sequences: a random-phase multisine carrying the
target amplitude spectrum, and the deterministic inverse-CDF sample carrying
the target distribution. The iteration then alternates rank-reordering (which
restores the distribution) with amplitude restoration (which restores the
spectrum), rank-reorder first, amplitude restoration last, so the default
output possesses the stored spectrum exactly while its distribution has
converged to within the requested tolerance.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .distribution import TargetDistribution, sample_target
from .errors import DegenerateInputError, PrftError
from .ingest import TimeSeries
from .spectral import (
    AmplitudeSpectrum,
    dft,
    random_phase_multisine,
    restore_amplitudes,
    spectral_phases,
    target_amplitudes,
)

logger = logging.getLogger(__name__)

CONVERGENCE_METRICS = ("sorted-rmse", "max-abs")
OUTPUT_VARIANTS = ("psd-exact", "pdf-exact")


@dataclass(frozen=True)
class PrftOptions:
    seed: int = 0
    tol: float = 1e-4
    max_iter: int = 1000
    convergence_metric: str = "sorted-rmse"
    output_variant: str = "psd-exact"

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.convergence_metric not in CONVERGENCE_METRICS:
            raise ValueError(f"convergence_metric must be one of {CONVERGENCE_METRICS}")
        if self.output_variant not in OUTPUT_VARIANTS:
            raise ValueError(f"output_variant must be one of {OUTPUT_VARIANTS}")


@dataclass
class SurrogateResult:
    surrogate: TimeSeries
    iterations_used: int
    trace: np.ndarray
    converged: bool
    seed: int
    stored_amps: AmplitudeSpectrum
    termination: str  # converged | stagnation | max-iterations
    output_variant: str


def impose_moments(z: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Affine-map z so its mean and standard deviation match y's."""
    z = np.asarray(z, dtype=float)
    y = np.asarray(y, dtype=float)
    if z.shape != y.shape:
        raise ValueError("sequences must have equal length")
    std_z = z.std()
    std_y = y.std()
    if std_z == 0.0 or std_y == 0.0:
        raise DegenerateInputError("moment imposition needs nonconstant sequences")
    a = std_y / std_z
    return a * z + (y.mean() - a * z.mean())


def rank_reorder(y_sorted: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Permute y_sorted so its rank order matches z's.

    The smallest y value lands where z's smallest value sits, and so on; the
    output is a permutation of y_sorted whose rank order equals z's.
    """
    y_sorted = np.asarray(y_sorted, dtype=float)
    z = np.asarray(z, dtype=float)
    if y_sorted.shape != z.shape:
        raise ValueError("sequences must have equal length")
    if np.any(np.diff(y_sorted) < 0):
        raise ValueError("y_sorted must be ascending")
    out = np.empty_like(y_sorted)
    out[np.argsort(z, kind="stable")] = y_sorted
    return out


def discrepancy(z: np.ndarray, y_sorted: np.ndarray, metric: str = "sorted-rmse") -> float:
    """Distribution mismatch between z and the sorted target sample.

    Both metrics compare sorted(z) against y_sorted and normalise by y's
    standard deviation, so the result is dimensionless.
    """
    if metric not in CONVERGENCE_METRICS:
        raise ValueError(f"metric must be one of {CONVERGENCE_METRICS}")
    z = np.asarray(z, dtype=float)
    y_sorted = np.asarray(y_sorted, dtype=float)
    if z.shape != y_sorted.shape:
        raise ValueError("sequences must have equal length")
    scale = y_sorted.std()
    if scale == 0.0:
        raise DegenerateInputError("target sample has zero variance")
    residual = np.sort(z, kind="stable") - y_sorted
    if metric == "sorted-rmse":
        return float(np.sqrt(np.mean(residual**2)) / scale)
    return float(np.max(np.abs(residual)) / scale)


def initialize(
    ts: TimeSeries, dist: TargetDistribution, seed: int
) -> tuple[np.ndarray, np.ndarray, AmplitudeSpectrum]:
    """Build (z0, y, Z): the moment-adjusted multisine, the inverse-CDF
    sample, and the stored full amplitude spectrum of z0.

    Z is taken from z0 *after* moment imposition, so its DC bin carries the
    imposed mean through every later amplitude restoration.
    """
    y = sample_target(dist, ts.n)
    z_raw = random_phase_multisine(target_amplitudes(ts), seed)
    z0 = impose_moments(z_raw, y)
    z_mags = np.abs(dft(z0))
    stored = AmplitudeSpectrum(mags=z_mags, n=ts.n, df=1.0 / (ts.n * ts.dt))
    return z0, y, stored


def generate(ts: TimeSeries, dist: TargetDistribution, opts: PrftOptions) -> SurrogateResult:
    """Run the full surrogate generation for one seed.

    Iterates rank-reorder -> phase extraction -> amplitude restoration until
    the sorted output matches the target sample within opts.tol, the rank
    order stops changing (fixed point), or opts.max_iter is hit.
    Non-convergence is reported through the result, not raised.
    """
    z, y, stored = initialize(ts, dist, opts.seed)
    prev_order = np.argsort(z, kind="stable")
    trace: list[float] = []
    termination = "max-iterations"

    for iteration in range(1, opts.max_iter + 1):
        reordered = rank_reorder(y, z)
        z = restore_amplitudes(stored, spectral_phases(reordered))
        d = discrepancy(z, y, opts.convergence_metric)
        trace.append(d)
        if d <= opts.tol:
            termination = "converged"
            break
        order = np.argsort(z, kind="stable")
        if np.array_equal(order, prev_order):
            # Rank order reproduced itself: the map is at its fixed point and
            # further iterations would repeat exactly.
            termination = "stagnation"
            break
        if iteration >= 3 and trace[-1] > trace[-2]:
            termination = "stagnation"
            break
        prev_order = order

    if opts.output_variant == "pdf-exact":
        values = rank_reorder(y, z)
    else:
        values = z
    label = f"{ts.label}:surrogate" if ts.label else "surrogate"
    surrogate = TimeSeries(values=values, dt=ts.dt, start=ts.start, label=label)
    return SurrogateResult(
        surrogate=surrogate,
        iterations_used=len(trace),
        trace=np.asarray(trace),
        converged=trace[-1] <= opts.tol,
        seed=opts.seed,
        stored_amps=stored,
        termination=termination,
        output_variant=opts.output_variant,
    )


def seed_stream_from(master: int, count: int) -> list[int]:
    """Derive `count` independent 64-bit seeds from one master seed."""
    state = np.random.SeedSequence(master).generate_state(count, dtype=np.uint64)
    return [int(s) for s in state]


def generate_ensemble(
    ts: TimeSeries,
    dist: TargetDistribution,
    opts: PrftOptions,
    count: int,
    seed_stream: int | Sequence[int] | None = None,
) -> list[SurrogateResult | None]:
    """Independent realizations with distinct seeds, in slot order.

    seed_stream may be an explicit seed sequence (must cover `count`) or a
    master seed to derive one from; None derives from opts.seed. A failed
    realization leaves None in its slot instead of aborting the ensemble.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if seed_stream is None:
        seed_stream = opts.seed
    if isinstance(seed_stream, (int, np.integer)):
        seeds = seed_stream_from(int(seed_stream), count)
    else:
        seeds = [int(s) for s in seed_stream]
        if len(seeds) < count:
            raise ValueError(f"seed stream provides {len(seeds)} seeds, need {count}")
        seeds = seeds[:count]

    results: list[SurrogateResult | None] = []
    for slot, seed in enumerate(seeds):
        try:
            results.append(generate(ts, dist, replace(opts, seed=seed)))
        except PrftError as exc:
            logger.warning("realization %d (seed %d) failed: %s", slot, seed, exc)
            results.append(None)
    return results
