"""Fourier-domain machinery: transforms, amplitude/phase splitting, random-phase
multisine synthesis, and the periodogram/ACF estimators used for validation.

Conventions used throughout (and asserted by the test suite):

* ``dft`` is the plain unnormalised forward transform
  ``X_k = sum_n x_n exp(-2j pi k n / N)``; ``idft`` carries the ``1/N``.
* The retained half band of an N-point spectrum is ``1 <= k < ceil(N/2)``:
  DC is dropped, and for even N the Nyquist bin is dropped too.
* Synthesis from a half-band magnitude spectrum rebuilds the conjugate
  mirror (bin N-k = conj of bin k) before inverting, so each retained bin
  keeps its full magnitude in the output. This equals taking twice the real
  part of the one-sided inverse, without the O(1) imaginary residue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError
from .ingest import TimeSeries

# Bins whose magnitude falls below this fraction of the spectrum maximum get
# phase 0: atan2 of numerical noise would destabilise the iteration.
PHASE_MAG_EPS = 1e-12


@dataclass
class AmplitudeSpectrum:
    """Nonnegative DFT magnitudes |X(f_k)| with their frequency grid.

    mags : length-n array of magnitudes (input units x samples)
    n    : length of the originating series
    df   : frequency resolution f_s / n in Hz
    """

    mags: np.ndarray
    n: int
    df: float

    def __post_init__(self):
        self.mags = np.asarray(self.mags, dtype=float)
        if self.mags.shape != (self.n,):
            raise ValueError("mags must have length n")
        if np.any(self.mags < 0) or not np.all(np.isfinite(self.mags)):
            raise ValueError("mags must be finite and nonnegative")
        if not self.df > 0:
            raise ValueError("df must be positive")

    @property
    def dc(self) -> float:
        """Stored DC magnitude (zero for half-band target spectra)."""
        return float(self.mags[0])

    def is_half_band(self) -> bool:
        return self.mags[0] == 0.0 and not np.any(self.mags[half_band_stop(self.n):])


@dataclass
class PhaseVector:
    """Spectral phases in [-pi, pi), one per DFT bin."""

    phases: np.ndarray

    def __post_init__(self):
        self.phases = np.asarray(self.phases, dtype=float)
        if not np.all(np.isfinite(self.phases)):
            raise ValueError("phases must be finite")

    def __len__(self) -> int:
        return self.phases.size


def half_band_stop(n: int) -> int:
    """First zeroed bin of a half-band spectrum: ceil(n/2)."""
    return (n + 1) // 2


def dft(x: np.ndarray) -> np.ndarray:
    """Forward DFT of a real sequence (unnormalised, full length)."""
    x = np.asarray(x, dtype=float)
    if x.size < 1:
        raise ValueError("dft needs at least one sample")
    return np.fft.fft(x)


def idft(spectrum: np.ndarray) -> np.ndarray:
    """Inverse DFT, carrying the 1/N normalisation."""
    return np.fft.ifft(np.asarray(spectrum, dtype=complex))


def target_amplitudes(ts: TimeSeries) -> AmplitudeSpectrum:
    """Half-band magnitude spectrum of a series: DC and upper half zeroed.

    Zeroing DC removes the mean; zeroing bins k >= ceil(n/2) keeps only one
    copy of each physical frequency for the multisine synthesis.
    """
    mags = np.abs(dft(ts.values))
    mags[0] = 0.0
    mags[half_band_stop(ts.n):] = 0.0
    return AmplitudeSpectrum(mags=mags, n=ts.n, df=1.0 / (ts.n * ts.dt))


def random_phase_multisine(amps: AmplitudeSpectrum, seed: int) -> np.ndarray:
    """Synthesize a real series with the given half-band magnitude spectrum.

    Retained bins get i.i.d. phases from U[0, 2pi) (PCG64, explicit 64-bit
    seed, phases obtained by scaling unit uniforms). The conjugate mirror is
    rebuilt before inversion; each retained bin of the output's DFT carries
    exactly ``amps.mags[k]``, with the mirror bin holding the conjugate.

    Deterministic for a fixed seed.
    """
    if not amps.is_half_band():
        raise ValueError("amplitude spectrum must be half-band (use target_amplitudes)")
    n = amps.n
    rng = np.random.default_rng(seed)
    retained = np.arange(1, half_band_stop(n))
    phases = rng.random(retained.size) * (2.0 * np.pi)

    spectrum = np.zeros(n, dtype=complex)
    spectrum[retained] = amps.mags[retained] * np.exp(1j * phases)
    spectrum[n - retained] = np.conj(spectrum[retained])
    z = idft(spectrum)
    # Conjugate symmetry makes the inverse real up to rounding noise.
    return z.real.copy()


def spectral_phases(x: np.ndarray) -> PhaseVector:
    """Phases of the DFT of x, with near-zero bins pinned to phase 0."""
    spectrum = dft(x)
    mags = np.abs(spectrum)
    phases = np.angle(spectrum)
    phases[mags <= PHASE_MAG_EPS * mags.max()] = 0.0
    phases[phases == np.pi] = -np.pi
    return PhaseVector(phases=phases)


def restore_amplitudes(amps: AmplitudeSpectrum, phases: PhaseVector) -> np.ndarray:
    """Real part of the inverse DFT of ``mags * exp(j * phases)``.

    When the magnitudes are symmetric (from a real series) and the phases are
    conjugate-antisymmetric (also from a real series), the inverse is real by
    construction and its DFT magnitudes reproduce ``amps.mags`` exactly.
    """
    if len(phases) != amps.n:
        raise ValueError("amplitude spectrum and phase vector lengths differ")
    spectrum = amps.mags * np.exp(1j * phases.phases)
    return idft(spectrum).real.copy()


def acf(x: np.ndarray, max_lag: int) -> np.ndarray:
    """Sample autocorrelation at lags 0..max_lag (biased estimator).

    rho(l) = sum_t (x_t - xbar)(x_{t+l} - xbar) / sum_t (x_t - xbar)^2,
    so rho(0) = 1 and the sequence is positive semidefinite.
    """
    x = np.asarray(x, dtype=float)
    if not 0 <= max_lag < x.size:
        raise ValueError("max_lag must satisfy 0 <= max_lag < len(x)")
    centered = x - x.mean()
    denom = float(centered @ centered)
    if denom == 0.0:
        raise DegenerateInputError("autocorrelation undefined for constant input")
    out = np.empty(max_lag + 1)
    for lag in range(max_lag + 1):
        out[lag] = centered[: x.size - lag] @ centered[lag:] / denom
    return out


def periodogram(ts: TimeSeries, units: str = "linear") -> tuple[np.ndarray, np.ndarray]:
    """One-sided periodogram over the retained band (DC excluded).

    linear     : density P_k = 2 |X_k|^2 dt / n in (m/s)^2 per Hz, at f_k in
                 Hz. The factor 2 folds the mirror bins in, so
                 sum_k P_k df recovers the series variance (up to the
                 dropped Nyquist bin for even n).
    db_per_cph : frequency axis in cycles/hour; values 10 log10 of the
                 density per cycles/hour (dB re 1 (m/s)^2/(cycles/hour)).
                 Bins with zero power map to -inf.
    """
    if units not in ("linear", "db_per_cph"):
        raise ValueError(f"unknown periodogram units {units!r}")
    spectrum = dft(ts.values)
    ks = np.arange(1, half_band_stop(ts.n))
    freqs_hz = ks / (ts.n * ts.dt)
    power = 2.0 * np.abs(spectrum[ks]) ** 2 * ts.dt / ts.n
    if units == "linear":
        return freqs_hz, power
    freqs_cph = freqs_hz * 3600.0
    density_cph = power / 3600.0
    with np.errstate(divide="ignore"):
        db = 10.0 * np.log10(density_cph)
    return freqs_cph, db
