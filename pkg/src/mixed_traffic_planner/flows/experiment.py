"""
Prefect flow for the full closed-loop experiment with baselines.

Run locally:
    python -m mixed_traffic_planner.flows.experiment configs/canonical.json
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any

from prefect import flow, task

from mixed_traffic_planner.config import build_network, dump_config
from mixed_traffic_planner.flows.common import (
    CANDIDATES_PATH,
    EXPERIMENT_PATH,
    LEARNING_CURVE_PATH,
    SUMMARY_PATH,
    load_experiment_config,
    open_store,
)
from mixed_traffic_planner.renderers.summary import build_summary_text
from mixed_traffic_planner.serialization.records import ExperimentRecord, ResultBundle
from mixed_traffic_planner.serialization.traces import candidates_csv, learning_curve_csv
from mixed_traffic_planner.simulation.experiment import run_experiment

if TYPE_CHECKING:
    from mixed_traffic_planner.planning.models import CandidateRecord
    from mixed_traffic_planner.schemas import ExperimentConfig
    from mixed_traffic_planner.simulation.models import ExperimentReport
    from mixed_traffic_planner.store import ResultStore


@task(name="run-experiment")
def run_experiment_task(config: ExperimentConfig) -> tuple[ExperimentReport, list[CandidateRecord]]:
    """Run the pipeline, returning the learned planner's candidate trace with the report."""
    trace: list[CandidateRecord] = []
    report = run_experiment(config, trace=trace)
    return report, trace


@task(name="write-bundle")
def write_bundle(store: ResultStore, config: ExperimentConfig, record: ExperimentRecord) -> Path:
    """Write experiment.json: report plus the config it came from."""
    bundle = ResultBundle(
        config_hash=store.config_hash,
        seed=store.seed,
        config=json.loads(dump_config(config)),
        report=record,
        traces=[LEARNING_CURVE_PATH.name, CANDIDATES_PATH.name],
    )
    return store.write(EXPERIMENT_PATH, bundle.model_dump(mode="json"), source="experiment")


@flow(name="experiment", log_prints=True)
def experiment_flow(
    config_path: Path,
    seed: int | None = None,
    out: Path | None = None,
) -> dict[str, Any]:
    """
    Run learn → plan → simulate with baselines and write the result bundle.

    Outputs: experiment.json, learning_curve.csv, candidates.csv, summary.txt.
    """
    config = load_experiment_config(config_path, seed)
    store = open_store(config, out)

    print(
        f"Running experiment: {config.simulation.users} users, "
        f"{config.learning.query_budget} queries each, seed {config.seeds.base}..."
    )
    report, trace = run_experiment_task(config)
    network = build_network(config)
    record = ExperimentRecord.from_domain(report, network)

    path = write_bundle(store, config, record)
    store.write_csv(LEARNING_CURVE_PATH, learning_curve_csv(report.learning_curve))
    store.write_csv(CANDIDATES_PATH, candidates_csv(trace, network.n))
    summary = build_summary_text(record, store.config_hash, store.seed)
    store.write_text(SUMMARY_PATH, summary)

    print(summary)
    print(f"Result bundle written to {path}")
    return {"path": str(path), "rows": {r.name: r.plan.J for r in record.rows}, "summary": summary}


if __name__ == "__main__":
    experiment_flow(Path(sys.argv[1]))
