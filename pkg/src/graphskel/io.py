"""File formats: point/distance CSV input, diagram CSV and graph JSON output."""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import List, Tuple

import numpy as np

from .builders import WeightedPointCloud
from .errors import DuplicatePointError, InputFormatError


def _parse_rows(path: str) -> List[List[float]]:
    rows: List[List[float]] = []
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        cells = [c for c in line.replace(",", " ").split()]
        row = []
        for colno, cell in enumerate(cells, start=1):
            try:
                row.append(float(cell))
            except ValueError:
                raise InputFormatError(
                    f"{path}:{lineno}: non-numeric cell {cell!r} in column {colno}"
                ) from None
        rows.append(row)
    if not rows:
        raise InputFormatError(f"{path}: no data rows")
    width = len(rows[0])
    for i, row in enumerate(rows, start=1):
        if len(row) != width:
            raise InputFormatError(
                f"{path}: ragged row {i} has {len(row)} cells, expected {width}"
            )
    return rows


def load_points(path: str, metric: str = "l2") -> WeightedPointCloud:
    """Load a point cloud (or a distance matrix when metric='precomputed') from CSV.

    Duplicate points and asymmetric matrices are rejected with their location.
    """
    rows = _parse_rows(path)
    arr = np.asarray(rows, dtype=float)
    if metric == "precomputed":
        n = len(arr)
        if arr.shape != (n, n):
            raise InputFormatError(
                f"{path}: distance matrix must be square, got {arr.shape[0]}x{arr.shape[1]}"
            )
        bad = np.argwhere(~np.isclose(arr, arr.T, rtol=0.0, atol=1e-12))
        if bad.size:
            i, j = bad[0]
            raise InputFormatError(
                f"{path}: asymmetric distance matrix at row {i + 1}, column {j + 1}: "
                f"{arr[i, j]!r} vs {arr[j, i]!r}"
            )
        return WeightedPointCloud(None, metric="precomputed", distance_matrix=arr)
    # reject exact duplicates with 1-based row numbers
    _, first, counts = np.unique(arr, axis=0, return_index=True, return_counts=True)
    if np.any(counts > 1):
        rep = arr[first[counts > 1][0]]
        where = np.nonzero(np.all(arr == rep, axis=1))[0] + 1
        raise DuplicatePointError(
            f"{path}: duplicate point at rows {', '.join(map(str, where))}"
        )
    return WeightedPointCloud(arr, metric=metric)


def write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")
    except OSError as exc:
        raise InputFormatError(f"cannot write {path}: {exc}") from exc


def read_diagram_csv(path: str) -> List[Tuple[int, float, float]]:
    """Read back a diagram CSV as (dim, birth, death) triples; death may be inf."""
    out = []
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header != ["dim", "birth_rho", "death_rho"]:
                raise InputFormatError(f"{path}: unexpected header {header!r}")
            for row in reader:
                if not row:
                    continue
                d, b, death = row
                out.append(
                    (int(d), float(b), math.inf if death == "inf" else float(death))
                )
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    return out
