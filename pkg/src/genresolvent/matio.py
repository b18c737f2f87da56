"""JSON matrix files and report serialization.

Matrix files carry {"rows", "cols", "re", "im"} with "im" optional (absent
means a real matrix). Values are plain JSON numbers, which round-trip
exactly for anything representable in binary64. Reports are emitted as
sorted-key JSON so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .errors import MatrixFileError
from .linalg import as_matrix


def _check_grid_of_numbers(name: str, grid, rows: int, cols: int, path) -> None:
    if not isinstance(grid, list) or len(grid) != rows:
        raise MatrixFileError(f"{path}: field '{name}' must be a list of {rows} rows")
    for i, row in enumerate(grid):
        if not isinstance(row, list) or len(row) != cols:
            raise MatrixFileError(
                f"{path}: field '{name}' row {i} must be a list of {cols} numbers"
            )
        for j, value in enumerate(row):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise MatrixFileError(
                    f"{path}: field '{name}' row {i} column {j} is not a number"
                )


def load_matrix(path) -> np.ndarray:
    """Read a complex matrix from a JSON matrix file."""
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MatrixFileError(f"{path}: cannot read: {exc}") from exc
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise MatrixFileError(f"{path}: top-level value must be an object")
    for field in ("rows", "cols", "re"):
        if field not in payload:
            raise MatrixFileError(f"{path}: missing required field '{field}'")
    rows, cols = payload["rows"], payload["cols"]
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
        raise MatrixFileError(f"{path}: 'rows' and 'cols' must be positive integers")
    _check_grid_of_numbers("re", payload["re"], rows, cols, path)
    re = np.array(payload["re"], dtype=np.float64)
    if "im" in payload and payload["im"] is not None:
        _check_grid_of_numbers("im", payload["im"], rows, cols, path)
        im = np.array(payload["im"], dtype=np.float64)
    else:
        im = np.zeros((rows, cols), dtype=np.float64)
    values = re + 1j * im
    if not np.all(np.isfinite(values)):
        raise MatrixFileError(f"{path}: matrix contains non-finite entries")
    return as_matrix(values)


def matrix_payload(a) -> dict:
    """JSON-ready dict for a matrix; 'im' is omitted when the matrix is real."""
    a = as_matrix(a)
    payload = {
        "rows": a.shape[0],
        "cols": a.shape[1],
        "re": [[float(v.real) for v in row] for row in a],
    }
    if np.any(a.imag):
        payload["im"] = [[float(v.imag) for v in row] for row in a]
    return payload


def save_matrix(a, path) -> None:
    """Write a matrix to a JSON matrix file."""
    Path(path).write_text(
        json.dumps(matrix_payload(a), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def file_digest(path) -> str:
    """sha256 hex digest of a file's bytes."""
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def jsonify(obj):
    """Recursively convert numpy scalars, arrays and complex numbers to JSON types."""
    if isinstance(obj, dict):
        return {str(k): jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonify(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonify(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    return obj


def report_text(report: dict) -> str:
    """Deterministic JSON rendering of a report."""
    return json.dumps(jsonify(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save_report(report: dict, path) -> None:
    """Serialize a report to a UTF-8 JSON file."""
    Path(path).write_text(report_text(report), encoding="utf-8")
