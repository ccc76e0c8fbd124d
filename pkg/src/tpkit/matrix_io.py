"""Matrix and parameter file I/O (JSON and CSV)."""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

from .errors import ParseError, ShapeError
from .exact import ExactMatrix, parse_rational


def parse_matrix_text(text: str, fmt: str = "json") -> ExactMatrix:
    if fmt == "json":
        return _parse_json(text)
    if fmt == "csv":
        return _parse_csv(text)
    raise ParseError(f"unknown matrix format {fmt!r}")


def _parse_json(text: str) -> ExactMatrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(obj, dict) or "data" not in obj:
        raise ParseError("matrix JSON must be an object with a 'data' field")
    data = obj["data"]
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ParseError("'data' must be an array of arrays")
    rows = []
    for i, row in enumerate(data, start=1):
        out = []
        for j, cell in enumerate(row, start=1):
            try:
                out.append(parse_rational(cell))
            except ParseError as exc:
                err = ParseError(f"{exc.reason} at data row {i}, entry {j}")
                err.line, err.column = i, j
                raise err from None
        rows.append(out)
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ShapeError(f"ragged rows: lengths {sorted(widths)}")
    A = ExactMatrix(rows)
    for key, actual in (("rows", A.nrows), ("cols", A.ncols)):
        if key in obj and obj[key] != actual:
            raise ShapeError(f"declared {key}={obj[key]} but data has {actual}")
    return A


def _parse_csv(text: str) -> ExactMatrix:
    rows = []
    for lineno, fields in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not fields or all(not f.strip() for f in fields):
            continue
        row = []
        for col, cell in enumerate(fields, start=1):
            try:
                row.append(parse_rational(cell))
            except ParseError as exc:
                raise ParseError(exc.reason, lineno, col) from None
        rows.append(row)
    if not rows:
        raise ParseError("empty CSV matrix")
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ShapeError(f"ragged rows: lengths {sorted(widths)}")
    return ExactMatrix(rows)


def guess_format(path: str | None, default: str | None = None) -> str:
    if default:
        return default
    if path and path.lower().endswith(".csv"):
        return "csv"
    return "json"


def read_matrix(path: str | None, fmt: str | None = None) -> ExactMatrix:
    """Read from ``path``, or stdin when ``path`` is None or ``"-"``."""
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_matrix_text(text, guess_format(path, fmt))


def matrix_to_dict(A: ExactMatrix) -> dict:
    return {"rows": A.nrows, "cols": A.ncols, "data": A.to_strings()}


def format_matrix(A: ExactMatrix, fmt: str = "json") -> str:
    """Canonical text form; ``parse`` then ``format`` is the identity on it."""
    if fmt == "csv":
        return "".join(",".join(r) + "\n" for r in A.to_strings())
    return json.dumps(matrix_to_dict(A)) + "\n"


def read_json(path: str | None) -> dict:
    text = sys.stdin.read() if path in (None, "-") else Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
