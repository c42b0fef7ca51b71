"""Rank-one structure of a single insertion and the drift checkers.

Inserting a (k+1)-simplex appends its boundary ``u`` as a new column of
``B_{k+1}``, so the up-Laplacian on C_k changes by exactly ``u u^T``. The
checkers below compare the spectra before and after against

* interlacing: lambda_j(A) <= lambda_j(B) <= lambda_{j+1}(A)
* Weyl: |lambda_j(B) - lambda_j(A)| <= |u|^2
* the linear bound: |lambda_j(B) - lambda_j(A)| <= 2|u|
* the two-sided estimate, checked literally (its trailing clause
  |lambda_{m+1}(B)| <= |u| fails in general and is reported, not hidden).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .boundary import BoundaryMatrix, Chain, append_column, boundary_chain, boundary_matrix, chain_norm
from .complex import (
    ComplexError,
    DuplicateSimplexError,
    MissingFaceError,
    Simplex,
    SimplicialComplex,
    dim,
    format_simplex,
    make_simplex,
)
from .spectra import DEFAULT_TOL, Spectrum, eigenvalues, nonzero_part, pad_with_zero, up_laplacian


class AlignmentError(ValueError):
    pass


class LengthMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class InsertionDecomposition:
    """``updated = base + spike spike^T``.

    In the full chain space ``base`` is the old Laplacian on C_k. In the
    restricted form (see :func:`restrict`) it is ``diag(old, 0)`` when the
    insertion enlarges the image of the boundary map.
    """

    base: np.ndarray
    spike: np.ndarray
    dimension_jump: bool
    spike_norm: float

    def reconstruct(self) -> np.ndarray:
        return self.base + np.outer(self.spike, self.spike)


def _jumps(columns: np.ndarray, u: np.ndarray, tol: float) -> bool:
    """True when ``u`` is not in the column span, up to ``tol * |u|``."""
    norm = np.linalg.norm(u)
    if norm == 0.0:
        return False
    if columns.shape[1] == 0:
        return True
    coef, *_ = np.linalg.lstsq(columns.astype(float), u.astype(float), rcond=None)
    return float(np.linalg.norm(columns @ coef - u)) > tol * norm


def decompose_column(b: BoundaryMatrix, ch: Chain, tol: float = DEFAULT_TOL) -> InsertionDecomposition:
    """Decomposition for appending an arbitrary column ``ch`` to ``b``."""
    extended = append_column(b, ch)
    dense = b.to_dense()
    u = ch.to_dense(b.n_rows)
    base = dense @ dense.T
    decomp = InsertionDecomposition(base, u, _jumps(dense, u, tol), chain_norm(ch))
    full = extended.to_dense()
    direct = full @ full.T
    if not np.allclose(decomp.reconstruct(), direct, rtol=0, atol=tol * max(1.0, np.abs(direct).max(initial=0))):
        raise ArithmeticError("rank-one reconstruction failed")
    return decomp


def _check_insertion(c: SimplicialComplex, k: int, s: Simplex) -> Simplex:
    s = make_simplex(s)
    if dim(s) != k + 1:
        raise ComplexError(
            f"updating the k={k} Laplacian needs a {k + 1}-simplex, got {format_simplex(s)}")
    if s in c:
        raise DuplicateSimplexError(f"simplex {format_simplex(s)} already present")
    missing = c.missing_faces(s)
    if missing:
        raise MissingFaceError(
            f"cannot insert {format_simplex(s)}: missing face(s) "
            + ", ".join(format_simplex(f) for f in missing))
    return s


def decompose_insertion(c: SimplicialComplex, k: int, s: Simplex,
                        tol: float = DEFAULT_TOL) -> InsertionDecomposition:
    """Split the k-Laplacian of ``c + s`` into old Laplacian plus ``u u^T``.

    ``s`` must be a (k+1)-simplex whose faces are all in ``c``. The identity
    is verified against the Laplacian of the enlarged complex (exactly, since
    all entries are integers).
    """
    s = _check_insertion(c, k, s)
    decomp = decompose_column(boundary_matrix(c, k + 1), boundary_chain(c, s), tol)
    if not np.array_equal(decomp.reconstruct(), up_laplacian(c.insert(s), k)):
        raise ArithmeticError("rank-one reconstruction differs from the enlarged Laplacian")
    return decomp


def restrict(b: BoundaryMatrix, ch: Chain, tol: float = DEFAULT_TOL) -> InsertionDecomposition:
    """Decomposition in an orthonormal basis of ``im [B | u]``.

    The first columns of the basis span ``im B``; when ``u`` leaves that
    span, the last basis vector is its normalised orthogonal residual. The
    old operator then occupies the leading block and the new direction
    contributes a zero row and column, so ``base = diag(old restricted, 0)``.
    """
    dense = b.to_dense().astype(float)
    u = ch.to_dense(b.n_rows).astype(float)
    if dense.shape[1]:
        left, sing, _ = np.linalg.svd(dense, full_matrices=False)
        cutoff = tol * max(1.0, sing[0] if sing.size else 0.0)
        q = left[:, sing > cutoff]
    else:
        q = np.zeros((b.n_rows, 0))
    jump = _jumps(dense, u, tol)
    if jump:
        r = u - q @ (q.T @ u)
        q = np.column_stack([q, r / np.linalg.norm(r)])
    base = q.T @ (dense @ dense.T) @ q
    base = (base + base.T) / 2
    if jump:
        # the residual direction is orthogonal to im B, hence in ker B^T
        base[-1, :] = 0.0
        base[:, -1] = 0.0
    return InsertionDecomposition(base, q.T @ u, jump, chain_norm(ch))


def drift(old: Spectrum, new: Spectrum) -> np.ndarray:
    """Per-index ``|new_j - old_j|`` after zero-padding ``old`` to ``len(new)``."""
    if len(new) < len(old):
        raise AlignmentError(f"spectrum shrank from {len(old)} to {len(new)} values")
    padded = pad_with_zero(old, len(new) - len(old))
    return np.abs(new.as_array() - padded.as_array())


class Interlacing(NamedTuple):
    ok: bool
    index: int | None


def check_interlacing(spec_a: Spectrum, spec_b: Spectrum, tol: float = DEFAULT_TOL) -> Interlacing:
    """``a_j - tol <= b_j <= a_{j+1} + tol``; the last upper bound is open.

    Returns the first violating (0-based) index, if any.
    """
    a, b = spec_a.as_array(), spec_b.as_array()
    if len(a) != len(b):
        raise AlignmentError("interlacing needs aligned spectra")
    upper = np.append(a[1:], np.inf)
    bad = np.flatnonzero((b < a - tol) | (b > upper + tol))
    return Interlacing(bad.size == 0, int(bad[0]) if bad.size else None)


def check_weyl(spec_a: Spectrum, spec_b: Spectrum, spike_norm: float, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.max(drift(spec_a, spec_b), initial=0.0) <= spike_norm ** 2 + tol)


def check_lipschitz(spec_a: Spectrum, spec_b: Spectrum, spike_norm: float, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.max(drift(spec_a, spec_b), initial=0.0) <= 2 * spike_norm + tol)


class TwoSided(NamedTuple):
    ok: bool
    leading_ok: bool
    trailing_ok: bool | None
    trailing_value: float | None


def check_two_sided(spec_a: Spectrum, spec_b: Spectrum, spike_norm: float,
                    tol: float = DEFAULT_TOL) -> TwoSided:
    """Literal two-sided estimate on restricted spectra.

    With ``m = len(spec_a)``: ``|b_j - a_j| <= 2|u|`` for the first ``m``
    indices, and, when ``spec_b`` carries one extra (trailing, largest)
    eigenvalue, ``|b_{m+1}| <= |u|``. Equal lengths mean the image did not
    grow and only the first clause applies.
    """
    m = len(spec_a)
    if len(spec_b) not in (m, m + 1):
        raise LengthMismatchError(f"expected {m} or {m + 1} new eigenvalues, got {len(spec_b)}")
    a, b = spec_a.as_array(), spec_b.as_array()
    leading = bool(np.all(np.abs(b[:m] - a) <= 2 * spike_norm + tol))
    if len(b) == m:
        return TwoSided(leading, leading, None, None)
    trailing_value = float(b[-1])
    trailing = abs(trailing_value) <= spike_norm + tol
    return TwoSided(leading and trailing, leading, trailing, trailing_value)


@dataclass(frozen=True)
class DriftCertificate:
    old: Spectrum
    new: Spectrum
    deltas: np.ndarray
    spike_norm: float
    interlacing_ok: bool
    interlacing_index: int | None
    weyl_ok: bool
    lipschitz_ok: bool
    two_sided: TwoSided
    dimension_jump: bool
    tol: float
    k: int = 0
    label: str = ""
    findings: tuple[str, ...] = field(default=())

    @property
    def lipschitz_bound(self) -> float:
        return 2 * self.spike_norm

    @property
    def weyl_bound(self) -> float:
        return self.spike_norm ** 2

    @property
    def tighter_bound(self) -> str:
        return "weyl" if self.weyl_bound < self.lipschitz_bound else "lipschitz"

    @property
    def max_delta(self) -> float:
        return float(np.max(self.deltas, initial=0.0))

    @property
    def max_ratio(self) -> float:
        if self.lipschitz_bound > 0:
            return self.max_delta / self.lipschitz_bound
        return 0.0 if self.max_delta <= self.tol else math.inf

    @property
    def passed(self) -> bool:
        return self.interlacing_ok and self.weyl_ok and self.lipschitz_ok

    def failed_checks(self, strict: bool = False) -> list[str]:
        names = []
        if not self.interlacing_ok:
            names.append(f"interlacing (index {self.interlacing_index})")
        if not self.weyl_ok:
            names.append("rank-one Weyl bound")
        if not self.lipschitz_ok:
            names.append("Lipschitz bound 2|du|")
        if strict and not self.two_sided.ok:
            names.append(_two_sided_name(self.two_sided))
        return names

    def csv_row(self, insertion_id) -> list:
        return [insertion_id, self.k, repr(self.spike_norm), repr(self.max_delta),
                repr(self.lipschitz_bound), repr(self.weyl_bound), repr(self.max_ratio),
                int(self.interlacing_ok), int(self.weyl_ok), int(self.lipschitz_ok)]

    def text(self) -> str:
        lines = [
            f"insertion        {self.label or '-'} (k={self.k})",
            f"boundary norm    {self.spike_norm:.12g}",
            f"old spectrum     {_fmt(self.old)}",
            f"new spectrum     {_fmt(self.new)}",
            f"max drift        {self.max_delta:.12g}",
            f"Lipschitz bound  {self.lipschitz_bound:.12g}  {_verdict(self.lipschitz_ok)}",
            f"Weyl bound       {self.weyl_bound:.12g}  {_verdict(self.weyl_ok)}",
            f"tighter bound    {self.tighter_bound}",
            f"interlacing      {_verdict(self.interlacing_ok)}",
            f"two-sided        {_verdict(self.two_sided.ok)}",
            f"image grew       {'yes' if self.dimension_jump else 'no'}",
            f"max ratio        {self.max_ratio:.12g}",
        ]
        lines += [f"finding          {f}" for f in self.findings]
        return "\n".join(lines)


CERTIFICATE_HEADER = ["insertion_id", "k", "spike_norm", "max_delta", "lipschitz_bound",
                      "weyl_bound", "max_ratio", "interlacing_ok", "weyl_ok", "lipschitz_ok"]


def _two_sided_name(ts: TwoSided) -> str:
    if ts.trailing_ok is False:
        return "two-sided estimate (trailing clause)"
    return "two-sided estimate (leading clause)"


def _fmt(s: Spectrum) -> str:
    vals = [0.0 if abs(x) < s.tol else x for x in s.values]
    return "[" + ", ".join(f"{x:.6g}" for x in vals) + "]"


def _verdict(ok: bool) -> str:
    return "ok" if ok else "VIOLATED"


def certify(decomp: InsertionDecomposition, tol: float = DEFAULT_TOL, k: int = 0,
            label: str = "") -> DriftCertificate:
    """Run every checker on one decomposition."""
    old = eigenvalues(decomp.base, tol)
    new = eigenvalues(decomp.reconstruct(), tol)
    deltas = drift(old, new)
    aligned_old = pad_with_zero(old, len(new) - len(old))
    inter = check_interlacing(aligned_old, new, tol)
    norm = decomp.spike_norm
    two = check_two_sided(nonzero_part(old), nonzero_part(new), norm, tol)
    findings = []
    if not two.ok:
        if two.trailing_ok is False:
            findings.append(
                f"two-sided estimate: trailing eigenvalue {two.trailing_value:.12g} exceeds |u| = {norm:.12g}")
        if not two.leading_ok:
            findings.append("two-sided estimate: leading clause exceeds 2|u|")
    return DriftCertificate(
        old=old, new=new, deltas=deltas, spike_norm=norm,
        interlacing_ok=inter.ok, interlacing_index=inter.index,
        weyl_ok=check_weyl(aligned_old, new, norm, tol),
        lipschitz_ok=check_lipschitz(aligned_old, new, norm, tol),
        two_sided=two, dimension_jump=decomp.dimension_jump, tol=tol, k=k,
        label=label, findings=tuple(findings),
    )


def certify_insertion(c: SimplicialComplex, k: int, s: Simplex,
                      tol: float = DEFAULT_TOL) -> DriftCertificate:
    s = make_simplex(s)
    return certify(decompose_insertion(c, k, s, tol), tol, k, format_simplex(s))


def write_certificates(certs, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CERTIFICATE_HEADER)
        for i, cert in enumerate(certs):
            w.writerow(cert.csv_row(cert.label or i))
