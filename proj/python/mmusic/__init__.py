"""Gap-tolerant stepped-frequency range profiling."""

from ._core import (
    SPEED_OF_LIGHT,
    ConditioningError,
    ConfigError,
    Error,
    InsufficientDataError,
    InvalidInputError,
    NoDataError,
    NoSignalError,
    NumericError,
    UnderdeterminedError,
    __version__,
    delay_to_range_m,
    estimate,
    estimate_acf,
    make_block_mask,
    make_random_mask,
    omp_baseline,
    range_to_delay_s,
    run_scenario_file,
    synthesize,
)

__all__ = [
    "SPEED_OF_LIGHT",
    "ConditioningError",
    "ConfigError",
    "Error",
    "InsufficientDataError",
    "InvalidInputError",
    "NoDataError",
    "NoSignalError",
    "NumericError",
    "UnderdeterminedError",
    "__version__",
    "delay_to_range_m",
    "estimate",
    "estimate_acf",
    "make_block_mask",
    "make_random_mask",
    "omp_baseline",
    "range_to_delay_s",
    "run_scenario_file",
    "synthesize",
]
