"""Readers and writers for the on-disk formats.

Inputs: edge list files (header ``n=<count>`` then ``i j w`` lines),
coordinate files (one ``x y [z]`` line per node), signal files (one value
per line). Outputs: CSV tables with a header row and JSON documents.
Floats are written with ``repr``, the shortest round-trip form, so that
identical data produces byte-identical files.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import FileFormatError
from .graphs import Graph, build_graph


def format_float(x: float) -> str:
    return repr(float(x))


def read_edge_list(path) -> Graph:
    """Parse an edge list file into a graph.

    First significant line must be ``n=<count>``; every following line is
    ``i j w`` with 0-based node indices and a positive weight. Blank lines
    are ignored. Structural violations raise :class:`FileFormatError`
    naming the line; semantic violations (self loop, duplicate, bad weight)
    surface as the usual construction errors.
    """
    path = Path(path)
    lines = path.read_text().splitlines()
    n = None
    edges = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if n is None:
            if not line.startswith("n="):
                raise FileFormatError(path, lineno, f"expected header 'n=<count>', got {line!r}")
            try:
                n = int(line[2:])
            except ValueError:
                raise FileFormatError(path, lineno, f"bad node count {line[2:]!r}") from None
            continue
        parts = line.split()
        if len(parts) != 3:
            raise FileFormatError(path, lineno, f"expected 'i j w', got {line!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise FileFormatError(path, lineno, f"expected 'i j w', got {line!r}") from None
        edges.append((i, j, w))
    if n is None:
        raise FileFormatError(path, max(len(lines), 1), "missing 'n=<count>' header")
    return build_graph(n, edges)


def read_coords(path, n: int | None = None) -> np.ndarray:
    """Parse a coordinate file: one ``x y`` or ``x y z`` line per node."""
    path = Path(path)
    rows = []
    width = None
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise FileFormatError(path, lineno, f"expected 2 or 3 coordinates, got {line!r}")
        if width is None:
            width = len(parts)
        elif len(parts) != width:
            raise FileFormatError(path, lineno, "mixed 2d and 3d coordinate lines")
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise FileFormatError(path, lineno, f"bad coordinate in {line!r}") from None
    coords = np.asarray(rows, dtype=float)
    if n is not None and coords.shape[0] != n:
        raise FileFormatError(path, len(rows), f"expected {n} coordinate lines, got {coords.shape[0]}")
    return coords


def read_signal(path, n: int | None = None) -> np.ndarray:
    """Parse a signal file: one float per line."""
    path = Path(path)
    values = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise FileFormatError(path, lineno, f"expected one number, got {line!r}") from None
    signal = np.asarray(values, dtype=float)
    if n is not None and signal.shape[0] != n:
        raise FileFormatError(path, len(values), f"expected {n} values, got {signal.shape[0]}")
    return signal


def write_signal(path, values: Sequence[float]):
    Path(path).write_text("".join(format_float(v) + "\n" for v in values))


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]):
    """CSV with one header row; floats via repr, fixed linefeed endings."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(list(header))
        for row in rows:
            writer.writerow(
                [format_float(v) if isinstance(v, float) else v for v in row]
            )


def json_safe(value):
    """Recursively replace non-finite floats with None for JSON output."""
    if isinstance(value, dict):
        return {k: json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (np.floating, float)):
        v = float(value)
        return v if math.isfinite(v) else None
    if isinstance(value, (np.integer, int)):
        return int(value)
    return value


def write_json(path, payload: dict):
    with open(path, "w") as fh:
        json.dump(json_safe(payload), fh, indent=2, sort_keys=True)
        fh.write("\n")
