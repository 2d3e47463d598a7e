"""Python surface of the T_reg subset dynamics simulator."""

from ._tregsim import (
    CloneSelection,
    ConfigError,
    DataError,
    EnsembleResult,
    InterventionSpec,
    InversionSummary,
    MannWhitneyResult,
    MwMethod,
    MwMode,
    NumericError,
    ResponseRecord,
    ScenarioParameters,
    Trajectory,
    __version__,
    find_inversion,
    mann_whitney,
    median,
    run_ensemble,
    run_simulation,
    sample_sd,
)

__all__ = [
    "CloneSelection",
    "ConfigError",
    "DataError",
    "EnsembleResult",
    "InterventionSpec",
    "InversionSummary",
    "MannWhitneyResult",
    "MwMethod",
    "MwMode",
    "NumericError",
    "ResponseRecord",
    "ScenarioParameters",
    "Trajectory",
    "__version__",
    "find_inversion",
    "mann_whitney",
    "median",
    "run_ensemble",
    "run_simulation",
    "sample_sd",
]
