"""SINR coverage analysis and Monte Carlo simulation for large networks in
which one transmit signal serves both data delivery and radar detection.

Closed-form ccdf evaluators for the communication, bistatic, monostatic,
joint and stand-alone radar detection modes (with and without high-power
slot cycling), cross-validated by a seeded Monte Carlo simulator, exposed
through a batch CLI.
"""
from .analytic import (
    CcdfCurve,
    CcdfRequest,
    NumericalFailure,
    QuadratureConfig,
    ccdf_bistatic_dts,
    ccdf_bistatic_nodts,
    ccdf_comm_avg,
    ccdf_comm_chi,
    ccdf_comm_nodts,
    ccdf_joint,
    ccdf_mono_dts,
    ccdf_mono_nodts,
    ccdf_radar_only,
    evaluate_ccdf,
    evaluate_curve,
    hyp2f1_interference,
    lt_interference_comm,
    lt_interference_guarded,
)
from .fading import FadingFitParams, harmonic
from .geometry import InterfererField, LinkDistances
from .metrics import (
    GainReport,
    find_interior_extremum,
    horizontal_shift_db,
    ks_distance,
    relative_gain_pct,
    throughput,
)
from .montecarlo import SimConfig, TrialDraw, estimate_ccdf, run_campaign, run_trial_A, run_trial_B
from .params import (
    NetworkParams,
    ScenarioGeometry,
    SinrMode,
    db_to_linear,
    linear_to_db,
    p_avg,
    reference_unit,
)
from .scenario import Scenario, ScenarioError, default_scenario, load_scenario

__version__ = "0.1.0"

__all__ = [
    "CcdfCurve",
    "CcdfRequest",
    "FadingFitParams",
    "GainReport",
    "InterfererField",
    "LinkDistances",
    "NetworkParams",
    "NumericalFailure",
    "QuadratureConfig",
    "Scenario",
    "ScenarioError",
    "ScenarioGeometry",
    "SimConfig",
    "SinrMode",
    "TrialDraw",
    "ccdf_bistatic_dts",
    "ccdf_bistatic_nodts",
    "ccdf_comm_avg",
    "ccdf_comm_chi",
    "ccdf_comm_nodts",
    "ccdf_joint",
    "ccdf_mono_dts",
    "ccdf_mono_nodts",
    "ccdf_radar_only",
    "db_to_linear",
    "default_scenario",
    "estimate_ccdf",
    "evaluate_ccdf",
    "evaluate_curve",
    "find_interior_extremum",
    "harmonic",
    "horizontal_shift_db",
    "hyp2f1_interference",
    "ks_distance",
    "linear_to_db",
    "load_scenario",
    "lt_interference_comm",
    "lt_interference_guarded",
    "p_avg",
    "reference_unit",
    "relative_gain_pct",
    "run_campaign",
    "run_trial_A",
    "run_trial_B",
    "throughput",
]
