"""Reproducible experiments: insertion runs on Vietoris-Rips filtrations,
the two worked examples, and a randomized rank-one property campaign.

Randomness comes from numpy's PCG64 bit generator seeded directly with the
configured integer; uniform doubles use its 53-bit mantissa construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .boundary import Chain, boundary_matrix
from .complex import Filtration, SimplicialComplex, dim, format_simplex, vietoris_rips
from .perturbation import (
    DriftCertificate,
    certify,
    certify_insertion,
    check_interlacing,
    check_weyl,
    decompose_column,
    drift,
)
from .spectra import DEFAULT_TOL, eigenvalues, pad_with_zero

CANONICAL_SEED = 20250611

# Five points whose Rips complex at scale 1.05 is the triangle 0-1-2 with the
# path 2-3-4 attached: five edges and a single fillable 2-simplex.
PENTAGON_POINTS = np.array([
    [0.0, 0.0],
    [1.0, 0.0],
    [0.5, 0.8],
    [1.3, 1.4],
    [2.1, 2.0],
])
PENTAGON_SCALE = 1.05


class InsufficientSimplicesError(ValueError):
    def __init__(self, wanted: int, found: int, q: int):
        super().__init__(f"requested {wanted} insertions but the filtration has only {found} {q}-simplices")
        self.wanted = wanted
        self.found = found


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = CANONICAL_SEED
    n_points: int = 20
    max_radius: float = 1.5
    max_dim: int = 2
    n_insertions: int = 50
    k: int = 1
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.n_points < 1:
            raise ValueError("n_points must be at least 1")
        if self.n_insertions < 0:
            raise ValueError("n_insertions must be nonnegative")
        if not self.max_radius > 0:
            raise ValueError("max_radius must be positive")
        if self.k < 0 or self.max_dim < self.k + 1:
            raise ValueError(f"max_dim must be at least k+1 = {self.k + 1}")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


@dataclass
class ExperimentReport:
    name: str
    certificates: list[DriftCertificate] = field(default_factory=list)
    findings: list[str] = field(default_factory=list)

    @property
    def scatter(self) -> list[tuple[float, float]]:
        return [(c.spike_norm, float(d)) for c in self.certificates for d in c.deltas]

    @property
    def max_ratio(self) -> float:
        return max((c.max_ratio for c in self.certificates), default=0.0)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.certificates)

    def counts(self) -> dict[str, int]:
        certs = self.certificates
        return {
            "insertions": len(certs),
            "interlacing": sum(c.interlacing_ok for c in certs),
            "weyl": sum(c.weyl_ok for c in certs),
            "lipschitz": sum(c.lipschitz_ok for c in certs),
            "two_sided": sum(c.two_sided.ok for c in certs),
        }

    def summary(self) -> str:
        n = len(self.certificates)
        counts = self.counts()
        lines = [f"experiment       {self.name}", f"insertions       {n}",
                 f"scatter points   {len(self.scatter)}"]
        for key in ("interlacing", "weyl", "lipschitz", "two_sided"):
            lines.append(f"{key:<16} {counts[key]}/{n} pass")
        lines.append(f"max ratio        {self.max_ratio:.12g}")
        lines.append(f"verdict          {'PASS' if self.passed else 'FAIL'}")
        lines += [f"finding          {f}" for f in self.findings]
        return "\n".join(lines)


def sample_points(seed: int, n: int, d: int = 2) -> np.ndarray:
    """``n`` points uniform in the unit cube of dimension ``d``."""
    return np.random.Generator(np.random.PCG64(seed)).random((n, d))


def run_filtration_insertions(f: Filtration, k: int, n_insertions: int,
                              tol: float = DEFAULT_TOL, name: str = "filtration") -> ExperimentReport:
    """Reveal the first ``n_insertions`` (k+1)-simplices of ``f`` one at a time.

    The starting complex holds every simplex of dimension <= k in ``f``, so
    each step changes only one column of ``B_{k+1}``.
    """
    targets = f.simplices(k + 1)
    if len(targets) < n_insertions:
        raise InsufficientSimplicesError(n_insertions, len(targets), k + 1)
    c = SimplicialComplex.from_simplices(s for s in f.simplices() if dim(s) <= k)
    report = ExperimentReport(name)
    for s in targets[:n_insertions]:
        cert = certify_insertion(c, k, s, tol)
        report.certificates.append(cert)
        report.findings += [f"{format_simplex(s)}: {msg}" for msg in cert.findings]
        c = c.insert(s)
    return report


def run_rips_insertion_experiment(cfg: ExperimentConfig = ExperimentConfig()) -> ExperimentReport:
    points = sample_points(cfg.seed, cfg.n_points)
    f = vietoris_rips(points, cfg.max_radius, cfg.max_dim)
    return run_filtration_insertions(f, cfg.k, cfg.n_insertions, cfg.tol, name=f"rips seed={cfg.seed}")


def sharpness_example(tol: float = DEFAULT_TOL) -> ExperimentReport:
    """Two vertices, one edge, then a duplicate of that edge's column."""
    c = SimplicialComplex.from_simplices([(0,), (1,), (0, 1)])
    b = boundary_matrix(c, 1)
    dup = Chain(0, dict(b.columns[0]))
    cert = certify(decompose_column(b, dup, tol), tol, k=0, label="duplicate 0-1")
    return ExperimentReport("sharpness", [cert], list(cert.findings))


def pentagon_complex() -> tuple[SimplicialComplex, tuple[int, ...]]:
    """Base complex (vertices and edges) and the 2-simplex to insert."""
    f = vietoris_rips(PENTAGON_POINTS, PENTAGON_SCALE, 2)
    c = SimplicialComplex.from_simplices(s for s in f.simplices() if dim(s) <= 1)
    (sigma,) = f.simplices(2)
    return c, sigma


def pentagon_example(tol: float = DEFAULT_TOL) -> ExperimentReport:
    c, sigma = pentagon_complex()
    cert = certify_insertion(c, 1, sigma, tol)
    return ExperimentReport("pentagon", [cert], list(cert.findings))


@dataclass
class CampaignSummary:
    trials: int = 0
    reconstruction: int = 0
    monotone: int = 0
    interlacing: int = 0
    weyl: int = 0
    zero_spike_trials: int = 0
    zero_spike_still: int = 0
    adversarial_trials: int = 0
    adversarial_equality: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def text(self) -> str:
        t = self.trials
        return "\n".join([
            f"trials           {t}",
            f"reconstruction   {self.reconstruction}/{t}",
            f"monotone growth  {self.monotone}/{t}",
            f"interlacing      {self.interlacing}/{t}",
            f"weyl             {self.weyl}/{t}",
            f"zero spike       {self.zero_spike_still}/{self.zero_spike_trials} with zero drift",
            f"adversarial      {self.adversarial_equality}/{self.adversarial_trials} at Weyl equality",
            f"verdict          {'PASS' if self.passed else 'FAIL'}",
        ] + [f"failure          {f}" for f in self.failures])


def property_campaign(n_trials: int = 200, seed: int = CANONICAL_SEED, max_n: int = 6,
                      tol: float = 1e-8) -> CampaignSummary:
    """Random ``G G^T`` plus a random spike column, checked four ways.

    Every tenth trial uses a zero spike and every tenth (offset by one) a
    spike along the top eigenvector, where Weyl holds with equality. Odd
    trials embed the base matrix with an extra zero row and column first.
    """
    if n_trials < 1 or max_n < 2:
        raise ValueError("need n_trials >= 1 and max_n >= 2")
    rng = np.random.Generator(np.random.PCG64(seed))
    out = CampaignSummary()
    for t in range(n_trials):
        n = int(rng.integers(2, max_n + 1))
        p = int(rng.integers(1, n + 2))
        embed = t % 2 == 1
        size = n + 1 if embed else n
        g = rng.standard_normal((n, p))
        if embed:
            g = np.vstack([g, np.zeros((1, p))])
        base = g @ g.T
        base_small = base[:n, :n]
        spec_a = eigenvalues(base, tol)

        kind = "random"
        if t % 10 == 0:
            u = np.zeros(size)
            kind = "zero"
        elif t % 10 == 1:
            top = np.linalg.eigh(base)[1][:, -1]
            u = top * rng.uniform(0.5, 2.0)
            kind = "adversarial"
        else:
            u = rng.standard_normal(size)
        norm = float(np.linalg.norm(u))

        extended = np.column_stack([g, u])
        direct = eigenvalues(extended @ extended.T, tol)
        spec_b = eigenvalues(base + np.outer(u, u), tol)
        ok_recon = np.allclose(direct.as_array(), spec_b.as_array(), rtol=0, atol=tol)
        if embed:
            padded = pad_with_zero(eigenvalues(base_small, tol), 1)
            ok_recon = ok_recon and np.allclose(padded.as_array(), spec_a.as_array(), rtol=0, atol=tol)
        deltas = spec_b.as_array() - spec_a.as_array()
        ok_mono = bool(np.all(deltas >= -tol))
        ok_inter = check_interlacing(spec_a, spec_b, tol).ok
        ok_weyl = check_weyl(spec_a, spec_b, norm, tol)

        out.trials += 1
        out.reconstruction += ok_recon
        out.monotone += ok_mono
        out.interlacing += ok_inter
        out.weyl += ok_weyl
        for name, ok in (("reconstruction", ok_recon), ("monotone", ok_mono),
                         ("interlacing", ok_inter), ("weyl", ok_weyl)):
            if not ok:
                out.failures.append(f"trial {t}: {name}")
        if kind == "zero":
            out.zero_spike_trials += 1
            out.zero_spike_still += bool(np.all(drift(spec_a, spec_b) <= tol))
        elif kind == "adversarial":
            out.adversarial_trials += 1
            out.adversarial_equality += math.isclose(
                float(np.max(drift(spec_a, spec_b))), norm ** 2, rel_tol=0, abs_tol=tol)
    return out
