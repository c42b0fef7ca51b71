"""Signed incidence matrices and boundary chains.

Incidence entries are exact Python ints, so ``B_{q-1} @ B_q == 0`` can be
checked without tolerance. Columns appended through :func:`append_column`
may carry arbitrary reals.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .complex import MissingFaceError, Simplex, SimplicialComplex, dim, faces, format_simplex


class DimensionMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Chain:
    """Sparse q-chain: coefficients keyed by position among the q-simplices."""

    dim: int
    coefficients: Mapping[int, float]

    def to_dense(self, size: int) -> np.ndarray:
        out = np.zeros(size, dtype=_dtype(self.coefficients.values()))
        for i, x in self.coefficients.items():
            out[i] = x
        return out


@dataclass(frozen=True)
class BoundaryMatrix:
    """Column-major sparse matrix of the boundary map C_q -> C_{q-1}."""

    q: int
    n_rows: int
    columns: tuple[Mapping[int, float], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, len(self.columns))

    def to_dense(self) -> np.ndarray:
        values = [x for col in self.columns for x in col.values()]
        out = np.zeros(self.shape, dtype=_dtype(values))
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                out[i, j] = x
        return out

    def triplets(self) -> list[tuple[int, int, float]]:
        return [(i, j, x) for j, col in enumerate(self.columns) for i, x in sorted(col.items())]


def _dtype(values) -> type:
    return np.int64 if all(isinstance(x, (int, np.integer)) for x in values) else np.float64


def boundary_chain(c: SimplicialComplex, s: Simplex) -> Chain:
    """Boundary of ``s`` expressed in the positions of ``c``'s faces.

    ``s`` itself need not belong to ``c``, only its faces.
    """
    coeffs: dict[int, int] = {}
    for f, sign in faces(s):
        if f not in c:
            raise MissingFaceError(
                f"face {format_simplex(f)} of {format_simplex(s)} is not in the complex")
        coeffs[c.position(f)] = sign
    return Chain(dim(s) - 1, coeffs)


def boundary_matrix(c: SimplicialComplex, q: int) -> BoundaryMatrix:
    if q < 1:
        raise ValueError(f"boundary matrices start at q=1, got {q}")
    cols = tuple(boundary_chain(c, s).coefficients for s in c.simplices(q))
    return BoundaryMatrix(q, c.n(q - 1), cols)


def chain_norm(ch: Chain) -> float:
    return math.sqrt(sum(x * x for x in ch.coefficients.values()))


def append_column(b: BoundaryMatrix, ch: Chain) -> BoundaryMatrix:
    """``[B | ch]`` with every existing column untouched."""
    if ch.dim != b.q - 1:
        raise DimensionMismatchError(f"chain of dim {ch.dim} cannot extend B_{b.q}")
    bad = [i for i in ch.coefficients if not 0 <= i < b.n_rows]
    if bad:
        raise DimensionMismatchError(f"chain positions {bad} outside 0..{b.n_rows - 1}")
    return BoundaryMatrix(b.q, b.n_rows, b.columns + (dict(ch.coefficients),))


def write_triplets(b: BoundaryMatrix, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["row", "col", "sign"])
        w.writerows(b.triplets())
