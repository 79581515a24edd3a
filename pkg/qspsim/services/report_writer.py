"""Service for emitting JSON and CSV artifacts."""

import csv
import io
import json
import logging
import sys
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

from pydantic import BaseModel

logger = logging.getLogger(__name__)


class ReportWriter:
    """Writes reports to a file, or to standard output when no path is given."""

    def __init__(self, out_path: Path | None = None):
        self.out_path = out_path

    def write_json(self, payload: BaseModel | dict[str, Any]) -> None:
        """Serialize a model (or a dict of models) as indented JSON."""
        if isinstance(payload, BaseModel):
            text = payload.model_dump_json(indent=2)
        else:
            text = json.dumps(_to_jsonable(payload), indent=2)
        self._emit(text + "\n")

    def write_csv(self, rows: Iterable[BaseModel], columns: Sequence[str]) -> None:
        """Write one CSV row per model, restricted to ``columns``."""
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row.model_dump(include=set(columns)))
        self._emit(buffer.getvalue())

    def _emit(self, text: str) -> None:
        if self.out_path is None:
            sys.stdout.write(text)
            return
        self.out_path.parent.mkdir(parents=True, exist_ok=True)
        self.out_path.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {self.out_path}")


def _to_jsonable(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, dict):
        return {key: _to_jsonable(item) for key, item in value.items()}
    if isinstance(value, list | tuple):
        return [_to_jsonable(item) for item in value]
    return value
