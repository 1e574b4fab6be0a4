"""Result store for command outputs.

Every JSON file is wrapped in a metadata envelope::

    {"meta": {"source": "plan", "version": "0.1.0", "config_hash": "...",
              "seed": 0, "params": {...}},
     "data": {...}}

No wall-clock timestamps are recorded and keys are sorted, so identical
runs write byte-identical files. CSV traces carry the same provenance as two
leading ``#`` comment lines.
"""

from __future__ import annotations

import json
from typing import TYPE_CHECKING, Any

from mixed_traffic_planner import __version__

if TYPE_CHECKING:
    from pathlib import Path


class ResultStore:
    """Writes result files under one output directory.

    Result files are read back with ``read_envelope``, which accepts any path
    (``--model`` and ``--plan`` may point outside the store).
    """

    def __init__(self, base_dir: Path, config_hash: str, seed: int) -> None:
        self.base = base_dir
        self.config_hash = config_hash
        self.seed = seed

    def write(self, path: Path, data: Any, source: str, **params: Any) -> Path:
        """Write data wrapped in a metadata envelope.

        Args:
            path: Relative path under the output directory (e.g. ``plan.json``).
            data: JSON-compatible payload stored under the ``data`` key.
            source: Producing command (``learn``, ``plan``, ...).
            **params: Extra metadata stored under ``meta["params"]``.

        Returns:
            Absolute path of the written file.
        """
        full = self._resolve(path)
        full.parent.mkdir(parents=True, exist_ok=True)

        meta: dict[str, Any] = {
            "source": source,
            "version": __version__,
            "config_hash": self.config_hash,
            "seed": self.seed,
        }
        if params:
            meta["params"] = dict(params)

        envelope = {"meta": meta, "data": data}
        with full.open("w") as f:
            json.dump(envelope, f, indent=2, sort_keys=True)
            f.write("\n")
        return full

    def write_csv(self, path: Path, text: str) -> Path:
        """Write a CSV trace prefixed with provenance comment lines."""
        full = self._resolve(path)
        full.parent.mkdir(parents=True, exist_ok=True)
        header = f"# config_hash={self.config_hash}\n# seed={self.seed}\n"
        full.write_text(header + text)
        return full

    def write_text(self, path: Path, text: str) -> Path:
        full = self._resolve(path)
        full.parent.mkdir(parents=True, exist_ok=True)
        full.write_text(text)
        return full

    def _resolve(self, path: Path) -> Path:
        full = self.base / path if not path.is_absolute() else path
        try:
            full.resolve().relative_to(self.base.resolve())
        except ValueError:
            msg = f"Path escapes store base directory: {path}"
            raise ValueError(msg) from None
        return full


def read_envelope(path: Path) -> dict[str, Any]:
    """Read an enveloped result file from anywhere (e.g. a ``--plan`` argument).

    Raises:
        FileNotFoundError: if the file does not exist.
        ValueError: if it is not a JSON envelope.
    """
    with path.open() as f:
        try:
            envelope = json.load(f)
        except json.JSONDecodeError as e:
            msg = f"{path}:{e.lineno}:{e.colno}: invalid JSON: {e.msg}"
            raise ValueError(msg) from e
    if not isinstance(envelope, dict) or "data" not in envelope:
        msg = f"{path}: not a result file (missing 'data')"
        raise ValueError(msg)
    return envelope
