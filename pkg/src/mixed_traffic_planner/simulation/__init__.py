"""Closed-loop simulation of the learn → plan → ride pipeline.

Public API:
  - models: Population, PhaseSeeds, SimulationResult, ElicitationOutcome,
            ExperimentReport, ReportRow, LearningCurvePoint
  - compute: sample_population, elicit_population, elicitation_phase,
             simulate_choices, evaluate_realized
  - experiment: run_experiment, learning_curve, queries_to_error
"""

from mixed_traffic_planner.simulation.compute import (
    elicit_population,
    elicitation_phase,
    evaluate_realized,
    sample_population,
    simulate_choices,
)
from mixed_traffic_planner.simulation.experiment import (
    ROW_LEARNED,
    ROW_ORACLE,
    ROW_ZERO_PRICE,
    learning_curve,
    queries_to_error,
    run_experiment,
)
from mixed_traffic_planner.simulation.models import (
    ElicitationOutcome,
    ExperimentReport,
    LearningCurvePoint,
    PhaseSeeds,
    Population,
    ReportRow,
    SimulationResult,
)

__all__ = [
    "ROW_LEARNED",
    "ROW_ORACLE",
    "ROW_ZERO_PRICE",
    "ElicitationOutcome",
    "ExperimentReport",
    "LearningCurvePoint",
    "PhaseSeeds",
    "Population",
    "ReportRow",
    "SimulationResult",
    "elicit_population",
    "elicitation_phase",
    "evaluate_realized",
    "learning_curve",
    "queries_to_error",
    "run_experiment",
    "sample_population",
    "simulate_choices",
]
