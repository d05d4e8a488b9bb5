"""Deterministic report writers: CSV/JSON with atomic file replacement."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Iterable, Sequence


def round_half_up(value: float, ndigits: int) -> float:
    """Decimal rounding with ties away from zero (table formatting).

    Works on the shortest decimal form of the float, so 2.25 -> 2.3 at
    one digit where bankers' rounding would give 2.2.
    """
    quantum = Decimal(1).scaleb(-ndigits)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def _atomic_write(path: Path, text: str) -> None:
    """Write via a same-directory temp file + rename, so partial runs never
    leave a corrupt report behind."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def write_csv(path: Path | str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _atomic_write(Path(path), buf.getvalue())


def write_json(path: Path | str, payload) -> None:
    _atomic_write(Path(path), json.dumps(payload, indent=2) + "\n")


def read_csv(path: Path | str) -> tuple[list[str], list[list[str]]]:
    """Header and rows of a report, for round-trip checks."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [row for row in reader]
