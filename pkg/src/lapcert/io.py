"""CSV readers and writers.

Schemas
-------
points       one point per row, d decimal columns, no header
filtration   ``value,dim,vertices`` with vertices dash-joined (``0-1-2``)
scatter      ``spike_norm,delta,bound``
"""

from __future__ import annotations

import csv
import math

import numpy as np

from .complex import ComplexError, Filtration, FiltrationError, format_simplex, parse_simplex


class InputError(ValueError):
    """Malformed input file; the message carries the offending line number."""


def _rows(path):
    try:
        with open(path, newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if row and any(cell.strip() for cell in row):
                    yield lineno, [cell.strip() for cell in row]
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def read_points(path) -> np.ndarray:
    points = []
    width = None
    for lineno, row in _rows(path):
        try:
            values = [float(x) for x in row]
        except ValueError:
            raise InputError(f"{path}:{lineno}: non-numeric value in {row}") from None
        if not all(math.isfinite(v) for v in values):
            raise InputError(f"{path}:{lineno}: non-finite coordinate")
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise InputError(f"{path}:{lineno}: expected {width} columns, got {len(values)}")
        points.append(values)
    if not points:
        raise InputError(f"{path}: no points")
    return np.array(points, dtype=float)


def write_points(points, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        for p in np.asarray(points, dtype=float).tolist():
            w.writerow([repr(x) for x in p])


def write_filtration(f: Filtration, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["value", "dim", "vertices"])
        for value, s in f.events:
            w.writerow([repr(value), len(s) - 1, format_simplex(s)])


def read_filtration(path) -> Filtration:
    events = []
    for lineno, row in _rows(path):
        if lineno == 1 and row[0] == "value":
            continue
        if len(row) != 3:
            raise InputError(f"{path}:{lineno}: expected value,dim,vertices")
        try:
            value = float(row[0])
            d = int(row[1])
            s = parse_simplex(row[2])
        except (ValueError, ComplexError) as exc:
            raise InputError(f"{path}:{lineno}: {exc}") from None
        if d != len(s) - 1:
            raise InputError(f"{path}:{lineno}: dim {d} does not match {row[2]}")
        events.append((value, s))
    try:
        return Filtration(tuple(events))
    except FiltrationError as exc:
        raise InputError(f"{path}: {exc}") from None


def write_scatter(pairs, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["spike_norm", "delta", "bound"])
        for x, y in pairs:
            w.writerow([repr(float(x)), repr(float(y)), repr(2 * float(x))])


def read_scatter(path) -> list[tuple[float, float]]:
    pairs = []
    for lineno, row in _rows(path):
        if lineno == 1 and row[0] == "spike_norm":
            continue
        if len(row) < 2:
            raise InputError(f"{path}:{lineno}: expected spike_norm,delta[,bound]")
        try:
            x, y = float(row[0]), float(row[1])
        except ValueError:
            raise InputError(f"{path}:{lineno}: non-numeric value in {row}") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InputError(f"{path}:{lineno}: non-finite value")
        pairs.append((x, y))
    return pairs
