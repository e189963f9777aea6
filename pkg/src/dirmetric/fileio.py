"""Serialization: space files (JSON), matrix files (CSV), report JSON.

Space file: a single JSON object
    {"labels": [str, ...],            optional, defaults to "0".."n-1"
     "base":   [[num | "inf", ...]],  optional, defaults to the
                                      symmetrized shortest-path metric
                                      of the edge lengths
     "edges":  [[src, dst, length], ...]}
Matrices are row-major and follow point index order.  "inf" encodes an
unreachable pair.  CSV matrix files carry a label header row and use the
same "inf" literal; reachability files hold 0/1 cells.

Report JSON is canonical: keys sorted, two-space indent, non-finite
floats replaced by the strings "inf" / "-inf", numpy scalars unwrapped.
Identical inputs therefore produce byte-identical reports.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, is_dataclass
from typing import Any

import numpy as np

from .extended import INFINITY
from .spaces import FiniteDSpace, zigzag_from_edges


class SpaceFormatError(ValueError):
    """Raised when a space or matrix file does not match the format."""


# ---------------------------------------------------------------------------
# space files


def _num_in(v, where: str) -> float:
    if v == "inf":
        return INFINITY
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SpaceFormatError(f"{where}: expected a number or \"inf\", got {v!r}")
    return float(v)


def doc_to_space(doc: dict) -> FiniteDSpace:
    if not isinstance(doc, dict):
        raise SpaceFormatError("space file must hold a JSON object")
    unknown = set(doc) - {"labels", "base", "edges"}
    if unknown:
        raise SpaceFormatError(f"unknown space file keys: {sorted(unknown)}")
    if "edges" not in doc:
        raise SpaceFormatError("space file field \"edges\" is required")
    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        raise SpaceFormatError("\"edges\" must be a list of [src, dst, length]")
    edges = []
    for i, e in enumerate(raw_edges):
        if not (isinstance(e, list) and len(e) == 3):
            raise SpaceFormatError(f"edges[{i}]: expected [src, dst, length]")
        s, d, l = e
        if isinstance(s, bool) or isinstance(d, bool) or not isinstance(s, int) or not isinstance(d, int):
            raise SpaceFormatError(f"edges[{i}]: src and dst must be integer point indices")
        edges.append((s, d, _num_in(l, f"edges[{i}].length")))

    labels = doc.get("labels")
    if labels is not None:
        if not (isinstance(labels, list) and all(isinstance(x, str) for x in labels)):
            raise SpaceFormatError("\"labels\" must be a list of strings")
        labels = tuple(labels)

    base_doc = doc.get("base")
    if base_doc is None:
        if labels is not None:
            n = len(labels)
        elif edges:
            n = 1 + max(max(s, d) for (s, d, _) in edges)
        else:
            raise SpaceFormatError("cannot infer point count: give \"labels\" or \"base\"")
        bad = [e for e in edges if not (0 <= e[0] < n and 0 <= e[1] < n)]
        if bad:
            raise SpaceFormatError(f"edge endpoint out of range for {n} points: {bad[0][:2]}")
        base = zigzag_from_edges(n, tuple(edges))
    else:
        if not isinstance(base_doc, list):
            raise SpaceFormatError("\"base\" must be a list of rows")
        n = len(base_doc)
        base = np.empty((n, n))
        for i, row in enumerate(base_doc):
            if not (isinstance(row, list) and len(row) == n):
                raise SpaceFormatError(f"base row {i}: expected {n} entries")
            for j, v in enumerate(row):
                base[i, j] = _num_in(v, f"base[{i}][{j}]")
    try:
        return FiniteDSpace(base=base, edges=tuple(edges), labels=labels)
    except ValueError as exc:
        raise SpaceFormatError(str(exc)) from exc


def space_to_doc(space: FiniteDSpace) -> dict:
    base = [["inf" if math.isinf(v) else float(v) for v in row] for row in space.base]
    return {
        "labels": list(space.labels),
        "base": base,
        "edges": [[int(s), int(d), float(l)] for (s, d, l) in space.edges],
    }


def load_space(path: str) -> FiniteDSpace:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpaceFormatError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    try:
        return doc_to_space(doc)
    except SpaceFormatError as exc:
        raise SpaceFormatError(f"{path}: {exc}") from exc


def save_space(space: FiniteDSpace, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_report(space_to_doc(space)))


# ---------------------------------------------------------------------------
# matrix CSV


def matrix_to_csv(matrix: np.ndarray, labels) -> str:
    """Matrix as CSV text: label header row, "inf" for unreachable pairs."""
    matrix = np.asarray(matrix)
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(labels)
    integral = matrix.dtype.kind in "biu"
    for row in matrix:
        if integral:
            w.writerow([int(v) for v in row])
        else:
            w.writerow(["inf" if math.isinf(v) else repr(float(v)) for v in row])
    return out.getvalue()


def csv_to_matrix(text: str) -> tuple[tuple[str, ...], np.ndarray]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise SpaceFormatError("empty matrix file")
    labels = tuple(rows[0])
    n = len(labels)
    body = rows[1:]
    if len(body) != n:
        raise SpaceFormatError(f"matrix file: {len(body)} rows for {n} columns")
    out = np.empty((n, n))
    for i, row in enumerate(body):
        if len(row) != n:
            raise SpaceFormatError(f"matrix file row {i + 1}: {len(row)} fields, expected {n}")
        for j, cell in enumerate(row):
            try:
                out[i, j] = INFINITY if cell == "inf" else float(cell)
            except ValueError as exc:
                raise SpaceFormatError(f"matrix file row {i + 1} field {j + 1}: {cell!r}") from exc
    return labels, out


# ---------------------------------------------------------------------------
# canonical report JSON


def jsonable(obj: Any) -> Any:
    """Recursively convert to plain JSON values; floats stay floats except
    non-finite ones, which become the strings "inf" / "-inf" / "nan"."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__} into a report")


def dump_report(obj: Any) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"
