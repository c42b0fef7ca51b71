"""Finite simplicial complexes, filtrations and Vietoris-Rips construction.

Simplices are plain tuples of vertex ids in strictly ascending order; the
ascending order fixes the orientation used by the boundary operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    """Base class for malformed complexes, filtrations and simplices."""


class EmptyBoundaryError(ComplexError):
    pass


class MissingFaceError(ComplexError):
    pass


class DuplicateSimplexError(ComplexError):
    pass


class FiltrationError(ComplexError):
    pass


class EmptyInputError(ComplexError):
    pass


def make_simplex(vertices: Iterable[int]) -> Simplex:
    """Canonical (sorted, duplicate-free) form of a vertex collection."""
    vs = tuple(sorted(int(v) for v in vertices))
    if not vs:
        raise ComplexError("a simplex needs at least one vertex")
    if vs[0] < 0:
        raise ComplexError(f"negative vertex id in {vs}")
    if len(set(vs)) != len(vs):
        raise ComplexError(f"repeated vertex in {vs}")
    return vs


def parse_simplex(text: str) -> Simplex:
    """Parse the dash-joined syntax ``"0-1-2"``."""
    parts = text.strip().split("-")
    try:
        vs = [int(p) for p in parts]
    except ValueError:
        raise ComplexError(f"cannot parse simplex {text!r}; expected e.g. 0-1-2") from None
    simplex = make_simplex(vs)
    if list(simplex) != vs:
        raise ComplexError(f"simplex {text!r} must list vertices in strictly ascending order")
    return simplex


def format_simplex(s: Simplex) -> str:
    return "-".join(str(v) for v in s)


def dim(s: Simplex) -> int:
    return len(s) - 1


def faces(s: Simplex) -> list[tuple[Simplex, int]]:
    """Codimension-one faces of ``s`` with their alternating signs.

    The i-th face drops vertex i and carries sign (-1)**i.
    """
    if len(s) < 2:
        raise EmptyBoundaryError(f"vertex {s} has no boundary faces")
    return [(s[:i] + s[i + 1:], -1 if i % 2 else 1) for i in range(len(s))]


def _check_insertable(index, s: Simplex) -> None:
    if s in index:
        raise DuplicateSimplexError(f"simplex {format_simplex(s)} already present")
    if len(s) > 1:
        missing = [f for f, _ in faces(s) if f not in index]
        if missing:
            names = ", ".join(format_simplex(f) for f in missing)
            raise MissingFaceError(f"cannot insert {format_simplex(s)}: missing face(s) {names}")


@dataclass(frozen=True)
class SimplicialComplex:
    """A face-closed family of simplices with a stable per-dimension order.

    Instances are immutable; :meth:`insert` returns a new complex whose
    registries extend the old ones, so positions never move.
    """

    _registry: tuple[tuple[Simplex, ...], ...] = ()
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_simplices(cls, simplices: Iterable[Iterable[int]]) -> "SimplicialComplex":
        """Insert simplices in the given order; faces must come first."""
        registry: list[list[Simplex]] = []
        index: dict[Simplex, tuple[int, int]] = {}
        for raw in simplices:
            s = make_simplex(raw)
            _check_insertable(index, s)
            q = dim(s)
            while len(registry) <= q:
                registry.append([])
            index[s] = (q, len(registry[q]))
            registry[q].append(s)
        return cls(tuple(tuple(r) for r in registry), index)

    def __contains__(self, s: object) -> bool:
        return s in self._index

    def __len__(self) -> int:
        return len(self._index)

    def __iter__(self) -> Iterator[Simplex]:
        for reg in self._registry:
            yield from reg

    @property
    def dimension(self) -> int:
        return len(self._registry) - 1

    def n(self, q: int) -> int:
        """Number of q-simplices (0 for absent or negative dimensions)."""
        if q < 0 or q >= len(self._registry):
            return 0
        return len(self._registry[q])

    def simplices(self, q: int) -> tuple[Simplex, ...]:
        if q < 0 or q >= len(self._registry):
            return ()
        return self._registry[q]

    def position(self, s: Simplex) -> int:
        """Column/row position of ``s`` within its dimension."""
        try:
            return self._index[s][1]
        except KeyError:
            raise MissingFaceError(f"simplex {format_simplex(s)} is not in the complex") from None

    def missing_faces(self, s: Simplex) -> list[Simplex]:
        if len(s) < 2:
            return []
        return [f for f, _ in faces(s) if f not in self._index]

    def insert(self, s: Simplex) -> "SimplicialComplex":
        s = make_simplex(s)
        _check_insertable(self._index, s)
        q = dim(s)
        registry = list(self._registry)
        while len(registry) <= q:
            registry.append(())
        registry[q] = registry[q] + (s,)
        index = dict(self._index)
        index[s] = (q, len(registry[q]) - 1)
        return SimplicialComplex(tuple(registry), index)

    def is_closed(self) -> bool:
        """Exhaustive check that every face of every member is a member."""
        for s in self:
            for r in range(1, len(s)):
                for f in combinations(s, r):
                    if f not in self._index:
                        return False
        return True


@dataclass(frozen=True)
class Filtration:
    """Ordered ``(value, simplex)`` events with nondecreasing values."""

    events: tuple[tuple[float, Simplex], ...]

    def __post_init__(self):
        seen: dict[Simplex, float] = {}
        last = -math.inf
        for value, s in self.events:
            if not math.isfinite(value) or value < 0:
                raise FiltrationError(f"invalid filtration value {value} for {format_simplex(s)}")
            if value < last:
                raise FiltrationError(f"values decrease at {format_simplex(s)} ({value} < {last})")
            if s in seen:
                raise FiltrationError(f"simplex {format_simplex(s)} appears twice")
            if len(s) > 1:
                for f, _ in faces(s):
                    if f not in seen:
                        raise FiltrationError(
                            f"simplex {format_simplex(s)} enters before its face {format_simplex(f)}")
            seen[s] = value
            last = value

    @classmethod
    def from_events(cls, events: Iterable[tuple[float, Iterable[int]]]) -> "Filtration":
        return cls(tuple((float(v), make_simplex(s)) for v, s in events))

    def __len__(self) -> int:
        return len(self.events)

    @property
    def max_value(self) -> float:
        return self.events[-1][0] if self.events else 0.0

    def simplices(self, q: int | None = None) -> list[Simplex]:
        return [s for _, s in self.events if q is None or dim(s) == q]

    def complex_at(self, r: float = math.inf) -> SimplicialComplex:
        """K(r): every event with value <= r, in event order."""
        if r < 0:
            raise FiltrationError(f"scale must be nonnegative, got {r}")
        return SimplicialComplex.from_simplices(s for value, s in self.events if value <= r)

    def append(self, s: Simplex, value: float | None = None) -> "Filtration":
        """New filtration with ``s`` as its final event."""
        if value is None:
            value = self.max_value
        return Filtration(self.events + ((float(value), make_simplex(s)),))


def diameter(points: np.ndarray, s: Sequence[int]) -> float:
    """Largest pairwise Euclidean distance among the vertices of ``s``."""
    if len(s) < 2:
        return 0.0
    return max(math.dist(points[a], points[b]) for a, b in combinations(s, 2))


def vietoris_rips(points, max_radius: float, max_dim: int,
                  convention: str = "diameter") -> Filtration:
    """Vietoris-Rips filtration of a point cloud.

    Under the default ``"diameter"`` convention a simplex enters at the
    largest pairwise distance among its vertices. ``"radius"`` halves every
    entry value (balls of radius r touch at distance 2r). Ties are broken by
    (value, dimension, vertex list).
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise EmptyInputError("Vietoris-Rips needs at least one point")
    if max_dim < 0 or max_radius < 0:
        raise ComplexError("max_dim and max_radius must be nonnegative")
    if convention not in ("diameter", "radius"):
        raise ComplexError(f"unknown scale convention {convention!r}")
    scale = 0.5 if convention == "radius" else 1.0

    n = pts.shape[0]
    dist = [[math.dist(pts[a], pts[b]) * scale for b in range(n)] for a in range(n)]
    events: list[tuple[float, int, Simplex]] = [(0.0, 0, (v,)) for v in range(n)]
    # clique expansion: extend each simplex by larger vertices
    layer = [((v,), 0.0) for v in range(n)]
    for q in range(1, max_dim + 1):
        nxt = []
        for s, value in layer:
            for w in range(s[-1] + 1, n):
                val = max([value] + [dist[v][w] for v in s])
                if val <= max_radius:
                    nxt.append((s + (w,), val))
        events.extend((val, q, s) for s, val in nxt)
        layer = nxt
        if not layer:
            break
    events.sort()
    return Filtration(tuple((v, s) for v, _, s in events))
