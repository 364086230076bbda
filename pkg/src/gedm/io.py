"""CSV matrix files and JSON reports.

Matrix files are plain CSV without a header, one row per line, each value
written with Python's shortest round-trip ``repr``.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

import numpy as np


def format_matrix_csv(m) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in np.asarray(m, dtype=float):
        writer.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


def parse_matrix_csv(text: str) -> np.ndarray:
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        try:
            rows.append([float(cell) for cell in row])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if not rows:
        raise ValueError("matrix file is empty")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ValueError(f"ragged matrix rows: widths {sorted(widths)}")
    return np.array(rows, dtype=float)


def read_matrix(path) -> np.ndarray:
    if str(path) == "-":
        return parse_matrix_csv(sys.stdin.read())
    return parse_matrix_csv(Path(path).read_text())


def write_matrix(path, m) -> None:
    text = format_matrix_csv(m)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def write_json(path, obj) -> None:
    text = dump_json(obj)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
