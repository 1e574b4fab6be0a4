"""Observation records file: one answered query per line.

Format (CSV, header optional, ``#`` lines ignored)::

    user_id,ell_a,p_a,ell_b,p_b,answer
    0,50.0,4.0,70.0,1.0,1
"""

from __future__ import annotations

import csv
import io
from typing import TYPE_CHECKING

from mixed_traffic_planner.learning.models import Observation, Query

if TYPE_CHECKING:
    from collections.abc import Iterable
    from pathlib import Path

RECORD_COLUMNS = ("user_id", "ell_a", "p_a", "ell_b", "p_b", "answer")


def parse_observations(text: str, source: str = "<records>") -> list[Observation]:
    """Parse records text into observations, reporting the offending line on error."""
    observations: list[Observation] = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or row[0].lstrip().startswith("#"):
            continue
        if [c.strip() for c in row] == list(RECORD_COLUMNS):
            continue
        if len(row) != len(RECORD_COLUMNS):
            msg = f"{source}:{lineno}: expected {len(RECORD_COLUMNS)} fields, got {len(row)}"
            raise ValueError(msg)
        try:
            user_id = int(row[0])
            ell_a, p_a, ell_b, p_b = (float(x) for x in row[1:5])
            answer = int(row[5])
            observations.append(
                Observation(
                    user_id=user_id,
                    query=Query.from_values(ell_a, p_a, ell_b, p_b),
                    answer=answer,
                )
            )
        except ValueError as e:
            msg = f"{source}:{lineno}: {e}"
            raise ValueError(msg) from e
    return observations


def read_observations(path: Path) -> list[Observation]:
    """Read a records file."""
    return parse_observations(path.read_text(), source=str(path))


def format_observations(observations: Iterable[Observation]) -> str:
    """Render observations in the records format (with header)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(RECORD_COLUMNS)
    for obs in observations:
        q = obs.query
        writer.writerow(
            [obs.user_id, repr(q.a.ell), repr(q.a.price), repr(q.b.ell), repr(q.b.price), obs.answer]
        )
    return buffer.getvalue()


def group_by_user(observations: Iterable[Observation]) -> dict[int, list[Observation]]:
    """Observations per user, users in ascending id order, answers in file order."""
    grouped: dict[int, list[Observation]] = {}
    for obs in observations:
        grouped.setdefault(obs.user_id, []).append(obs)
    return dict(sorted(grouped.items()))


def write_observations(path: Path, observations: Iterable[Observation]) -> Path:
    """Write observations as a records file, creating parent directories."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_observations(observations))
    return path
