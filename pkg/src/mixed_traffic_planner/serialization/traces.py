"""CSV traces with a fixed column order.

Rendering only; the store adds the ``# config_hash`` / ``# seed`` header
lines when writing.
"""

from __future__ import annotations

import csv
import io
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    import numpy as np

    from mixed_traffic_planner.planning.models import CandidateRecord
    from mixed_traffic_planner.simulation.models import LearningCurvePoint

LEARNING_CURVE_COLUMNS = ("budget", "learning_error")
CHOICE_COLUMNS = ("user_id", "theta", "choice")


def _render(columns: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buffer.getvalue()


def learning_curve_csv(curve: Iterable[LearningCurvePoint]) -> str:
    return _render(LEARNING_CURVE_COLUMNS, ((p.budget, repr(p.learning_error)) for p in curve))


def candidate_columns(n_roads: int) -> tuple[str, ...]:
    """Columns of the candidate-evaluation log for an n-road network."""
    return (
        "index",
        "k",
        *(f"ell_{i}" for i in range(n_roads)),
        *(f"p_{i}" for i in range(n_roads)),
        "J",
        "profit",
        "feasible",
        "admissible",
    )


def candidates_csv(trace: Sequence[CandidateRecord], n_roads: int) -> str:
    """One row per evaluated candidate, in enumeration order."""
    rows = (
        (
            index,
            "" if c.k is None else c.k,
            *(repr(x) for x in c.ell),
            *(repr(x) for x in c.p),
            repr(c.J),
            repr(c.profit),
            int(c.feasible),
            int(c.admissible),
        )
        for index, c in enumerate(trace)
    )
    return _render(candidate_columns(n_roads), rows)


def choices_csv(thetas: Sequence[float], choices: np.ndarray) -> str:
    """Per-user simulated choices."""
    return _render(
        CHOICE_COLUMNS,
        ((uid, repr(float(t)), int(c)) for uid, (t, c) in enumerate(zip(thetas, choices, strict=True))),
    )
