"""Deterministic CSV rendering and file output for the CLI."""

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from src import __version__
from src.core.exceptions import AccuracyError, OutputError
from src.core.logging_config import logger

NUMBER_FORMAT = "%.12g"
UNITS = "energy=Ry*, length=a_B*"


@dataclass
class ResultTable:
    """Named columns plus rows keyed by column name."""

    columns: List[str]
    rows: List[Dict[str, float]]
    notes: List[str] = field(default_factory=list)

    def column(self, name: str) -> List[float]:
        return [row[name] for row in self.rows]


def metadata_line(command: str, flags: Mapping[str, object], notes: Sequence[str] = ()) -> str:
    """
    Single `#` provenance line: version, command, sorted flags, units.

    Flags whose value is None are left out so defaults don't vary the line.
    """
    rendered = ", ".join(
        f"{key}={value}" for key, value in sorted(flags.items()) if value is not None
    )
    parts = [
        f"exciton-cylinder {__version__}",
        f"command={command}",
        f"flags: {rendered}",
        f"units: {UNITS}",
    ]
    parts.extend(f"note: {note}" for note in notes)
    return "# " + " | ".join(parts)


def render_csv(table: ResultTable, metadata: str) -> str:
    frame = pd.DataFrame(table.rows, columns=table.columns, dtype=float)
    if not np.isfinite(frame.to_numpy()).all():
        raise AccuracyError("Refusing to write non-finite values")
    body = frame.to_csv(index=False, float_format=NUMBER_FORMAT, lineterminator="\n")
    return metadata + "\n" + body


def write_text(text: str, out: Optional[str]) -> None:
    """
    Write to `out`, or stdout when `out` is None or "-".

    Raises:
        OutputError: the file could not be written (message carries the path)
    """
    if out is None or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(out)
    try:
        with path.open("w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as exc:
        raise OutputError(f"Cannot write {path}: {exc.strerror or exc}") from exc
    logger.info(f"Wrote {len(text)} bytes to {path}")
