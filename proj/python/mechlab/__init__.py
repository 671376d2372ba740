"""Strategyproof distributed two-facility location on a line.

Thin wrapper over the C++ core: instances with a candidate-slot multiset,
the (alpha, beta)-quantile mechanism family with execution traces, an exact
enumeration oracle, and the audit helpers (strategyproofness probing,
distortion scans, lower-bound family replays).
"""

from mechlab._core import (
    CRITICAL_QUANTILE,
    Agent,
    CandidateSlot,
    DeviationFinding,
    FamilyReplay,
    FamilyReplayRow,
    GroupRepresentatives,
    Instance,
    MechanismResult,
    MechanismTrace,
    Objective,
    OptimalResult,
    ParseError,
    Placement,
    QuantileConfig,
    Ratio,
    ScanConfig,
    WitnessError,
    check_locality,
    check_strategyproof,
    check_witness_and_adjacency,
    deviation_set,
    distortion_of,
    distortion_scan,
    eval_objective,
    individual_cost,
    load_instance,
    make_placement,
    objective_from_string,
    optimal_placement,
    parametric_bound,
    parse_instance,
    preset,
    replay_family,
    run_quantile,
    step1_representatives,
    validate_instance,
)

__all__ = [
    "CRITICAL_QUANTILE",
    "Agent",
    "CandidateSlot",
    "DeviationFinding",
    "FamilyReplay",
    "FamilyReplayRow",
    "GroupRepresentatives",
    "Instance",
    "MechanismResult",
    "MechanismTrace",
    "Objective",
    "OptimalResult",
    "ParseError",
    "Placement",
    "QuantileConfig",
    "Ratio",
    "ScanConfig",
    "WitnessError",
    "check_locality",
    "check_strategyproof",
    "check_witness_and_adjacency",
    "deviation_set",
    "distortion_of",
    "distortion_scan",
    "eval_objective",
    "individual_cost",
    "load_instance",
    "make_placement",
    "objective_from_string",
    "optimal_placement",
    "parametric_bound",
    "parse_instance",
    "preset",
    "replay_family",
    "run_quantile",
    "step1_representatives",
    "validate_instance",
]
