"""Up-persistent Laplacians and their spectra.

Laplacians are formed on the full chain space C_k as ``B B^T`` with
``B = B_{k+1}``. The spectrum therefore contains ``n_k - rank(B)`` structural
zeros; :func:`numerical_rank` and :func:`nonzero_part` recover the operator
restricted to the image of ``B``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .boundary import boundary_matrix
from .complex import SimplicialComplex

DEFAULT_TOL = 1e-9


class InvalidMatrixError(ValueError):
    pass


class EigenSolverError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Spectrum:
    values: tuple[float, ...]
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        vals = tuple(float(x) for x in self.values)
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise ValueError("spectrum values must be nondecreasing")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)


def up_laplacian(c: SimplicialComplex, k: int) -> np.ndarray:
    """``B_{k+1} B_{k+1}^T`` as a dense integer matrix of size n_k."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    b = boundary_matrix(c, k + 1).to_dense()
    if b.shape[1] == 0:
        return np.zeros((c.n(k), c.n(k)), dtype=b.dtype)
    return b @ b.T


def _validate(m) -> np.ndarray:
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidMatrixError(f"expected a square matrix, got shape {a.shape}")
    a = a.astype(float)
    if not np.all(np.isfinite(a)):
        raise InvalidMatrixError("matrix has non-finite entries")
    if not np.array_equal(a, a.T):
        raise InvalidMatrixError("matrix is not symmetric")
    return a


def jacobi_eigh(a: np.ndarray, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Sweeps over all off-diagonal pairs, annihilating each with a plane
    rotation, until the off-diagonal mass is negligible.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    scale = max(np.linalg.norm(a), 1e-300)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off <= 1e-17 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * ap - s * aq, s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :], a[q, :] = c * ap - s * aq, s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p], v[:, q] = c * vp - s * vq, s * vp + c * vq
    else:
        raise EigenSolverError(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigenvalues(m, tol: float = DEFAULT_TOL, method: str = "lapack") -> Spectrum:
    """All eigenvalues of a symmetric matrix, with multiplicity, ascending.

    Every eigenpair is checked against ``|Mv - lv| <= tol * max(1, |M|_2)``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = _validate(m)
    if a.shape[0] == 0:
        return Spectrum((), tol)
    if method == "lapack":
        w, v = np.linalg.eigh(a)
    elif method == "jacobi":
        w, v = jacobi_eigh(a)
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    norm = max(1.0, float(np.max(np.abs(w))))
    residual = np.linalg.norm(a @ v - v * w, axis=0)
    if np.any(residual > tol * norm):
        raise EigenSolverError(f"eigenpair residual {residual.max():.3e} exceeds {tol * norm:.3e}")
    return Spectrum(tuple(np.sort(w)), tol)


def pad_with_zero(s: Spectrum, count: int) -> Spectrum:
    if count < 0:
        raise ValueError("count must be nonnegative")
    if count == 0:
        return s
    return Spectrum(tuple(sorted(s.values + (0.0,) * count)), s.tol)


def rank_of(s: Spectrum, tol: float | None = None) -> int:
    """Number of eigenvalues above ``tol * max(1, largest)``."""
    tol = s.tol if tol is None else tol
    if not s.values:
        return 0
    cutoff = tol * max(1.0, s.values[-1])
    return sum(1 for x in s.values if x > cutoff)


def numerical_rank(m, tol: float = DEFAULT_TOL) -> int:
    return rank_of(eigenvalues(m, tol), tol)


def nonzero_part(s: Spectrum, tol: float | None = None) -> Spectrum:
    """Spectrum of the operator restricted to the image (top ``rank`` values)."""
    r = rank_of(s, tol)
    return Spectrum(s.values[len(s) - r:], s.tol)


def write_spectrum(s: Spectrum, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "value"])
        for i, x in enumerate(s.values):
            w.writerow([i, repr(x)])


def write_matrix(m, path) -> None:
    a = np.asarray(m)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        for row in a.tolist():
            w.writerow([repr(x) for x in row])
