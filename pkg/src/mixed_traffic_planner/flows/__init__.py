"""Prefect flows for the command-line pipeline.

Thin orchestrators that wire together config, the computation packages,
serialization and the result store. Progress is reported with ``print`` and
captured by Prefect (``log_prints=True``).

Flows:
  - learn: elicit (simulated, interactive or from records) → fit → population.json
  - plan: population.json → optimize → plan.json + candidates.csv
  - simulate: plan.json → simulated choices → simulation.json + choices.csv
  - experiment: full pipeline with baselines → experiment.json + traces + summary.txt

Usage:
    python -m mixed_traffic_planner.flows.experiment configs/canonical.json
"""
