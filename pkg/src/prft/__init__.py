"""Surrogate wind-speed time series with exact spectra and convergent
distributions, via phase-randomised Fourier transforms."""

from .distribution import (
    TargetDistribution,
    fit_empirical,
    fit_weibull,
    load_table,
    quantile,
    sample_target,
    uniform_grid,
)
from .engine import (
    PrftOptions,
    SurrogateResult,
    discrepancy,
    generate,
    generate_ensemble,
    impose_moments,
    initialize,
    rank_reorder,
    seed_stream_from,
)
from .errors import (
    DataQualityError,
    DegenerateInputError,
    DomainError,
    FitError,
    FormatError,
    InsufficientDataError,
    PrftError,
)
from .ingest import IngestConfig, TimeSeries, load_series, trim_to_calendar, write_series
from .spectral import (
    AmplitudeSpectrum,
    PhaseVector,
    acf,
    dft,
    idft,
    periodogram,
    random_phase_multisine,
    restore_amplitudes,
    spectral_phases,
    target_amplitudes,
)
from .validate import (
    AsvTable,
    ValidationReport,
    acf_error,
    asv,
    asv_ensemble,
    asv_filter,
    build_report,
    cdf_fit,
    psd_error,
    qq_pairs,
    top_power_bins,
)

__version__ = "0.1.0"
