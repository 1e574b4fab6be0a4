"""One-screen summary of an experiment run."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from mixed_traffic_planner.renderers import render_template

if TYPE_CHECKING:
    from mixed_traffic_planner.serialization.records import ExperimentRecord


def _fmt(value: float | None, spec: str = ".3f") -> str:
    return "-" if value is None else format(value, spec)


def _vector(values: list[float], spec: str = ".1f") -> str:
    return "(" + ", ".join(format(v, spec) for v in values) + ")"


def summary_rows(record: ExperimentRecord) -> list[dict[str, Any]]:
    """Table rows: one per planner variant, preformatted for fixed-width output."""
    rows = []
    for row in record.rows:
        plan = row.plan
        sim = row.simulation
        rows.append(
            {
                "name": row.name,
                "J": _fmt(plan.J),
                "realized_J": _fmt(sim.realized_J if sim else None),
                "profit": _fmt(plan.profit),
                "unserved": _fmt(plan.unserved_h),
                "feasible": "yes" if plan.feasible else "no",
                "proposition": "yes" if plan.proposition_holds else "no",
                "ell": _vector(plan.ell),
                "p": _vector(plan.p, ".2f"),
            }
        )
    return rows


def build_summary_text(record: ExperimentRecord, config_hash: str, seed: int) -> str:
    """Render the comparison table, learning curve and fitted model."""
    model = record.learned_model
    return render_template(
        "summary.txt.j2",
        rows=summary_rows(record),
        curve=[(p.budget, _fmt(p.learning_error, ".4f")) for p in record.learning_curve],
        model_kind=model.model.kind,
        model_mean=_fmt(model.mean, ".4f"),
        model_variance=_fmt(model.variance, ".4f"),
        queries_to_error=record.queries_to_error,
        baseline_flagged=record.baseline_flagged,
        config_hash=config_hash[:12],
        seed=seed,
    )
