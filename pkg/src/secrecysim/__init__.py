"""Network-level physical-layer security: smart AP selection plus optimal
friendly jamming from the idle AP, evaluated over spatial grids and Monte
Carlo station placements."""

__version__ = "0.1.0"

from .channel import (
    SPEED_OF_LIGHT,
    ApConfig,
    ChannelParams,
    Point2D,
    distance,
    distance_corrected_power,
    effective_distance,
    shannon_capacity,
    transmit_power_from_corrected,
)
from .fjopt import (
    FjCoefficients,
    FjGeometry,
    FjSolution,
    compute_coefficients,
    optimize_fj_power,
    secrecy_from_capacities,
    secrecy_objective,
)
from .policy import (
    PolicyKind,
    Scenario,
    SelectionResult,
    select,
    select_max_secrecy,
    select_max_sinr,
    select_with_fj,
)
from .scenario_io import (
    BUNDLED_SCENARIOS,
    LoadedScenario,
    McSettings,
    ScenarioValidationError,
    bundled_scenario_path,
    load_scenario,
    read_heatmap,
    read_summary,
    watt_to_dbm,
    write_heatmap,
    write_summary,
)
from .sweep import (
    ALL_POLICIES,
    CellResult,
    MonteCarloSummary,
    PolicyMeans,
    SampleRecord,
    SweepConfig,
    SweepSummary,
    coverage_ratio,
    monte_carlo,
    sweep_eavesdropper,
)

__all__ = [
    "SPEED_OF_LIGHT",
    "ApConfig",
    "ChannelParams",
    "Point2D",
    "distance",
    "distance_corrected_power",
    "effective_distance",
    "shannon_capacity",
    "transmit_power_from_corrected",
    "FjCoefficients",
    "FjGeometry",
    "FjSolution",
    "compute_coefficients",
    "optimize_fj_power",
    "secrecy_from_capacities",
    "secrecy_objective",
    "PolicyKind",
    "Scenario",
    "SelectionResult",
    "select",
    "select_max_secrecy",
    "select_max_sinr",
    "select_with_fj",
    "BUNDLED_SCENARIOS",
    "LoadedScenario",
    "McSettings",
    "ScenarioValidationError",
    "bundled_scenario_path",
    "load_scenario",
    "read_heatmap",
    "read_summary",
    "watt_to_dbm",
    "write_heatmap",
    "write_summary",
    "ALL_POLICIES",
    "CellResult",
    "MonteCarloSummary",
    "PolicyMeans",
    "SampleRecord",
    "SweepConfig",
    "SweepSummary",
    "coverage_ratio",
    "monte_carlo",
    "sweep_eavesdropper",
    "__version__",
]
