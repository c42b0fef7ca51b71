"""Independent reference computations used to freeze expected values.

Nothing here touches LAPACK or the package's own linear algebra.
"""

from itertools import combinations, permutations
import math

import mpmath


def _perm_sign(p):
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _polymul(a, b):
    out = [mpmath.mpf(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def charpoly(m, dps=60):
    """Coefficients of det(lambda I - M), lowest degree first, by Leibniz expansion."""
    n = len(m)
    with mpmath.workdps(dps):
        total = [mpmath.mpf(0)] * (n + 1)
        for p in permutations(range(n)):
            term = [mpmath.mpf(_perm_sign(p))]
            for i in range(n):
                entry = mpmath.mpf(float(m[i][p[i]]))
                # (lambda * [i == p(i)] - m_ij)
                term = _polymul(term, [-entry, mpmath.mpf(1 if i == p[i] else 0)])
            for d, c in enumerate(term):
                total[d] += c
        return total


def charpoly_roots(m, dps=60):
    """Sorted real eigenvalues of a symmetric matrix from its characteristic polynomial."""
    coeffs = charpoly(m, dps)
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=500, extraprec=4 * dps)
        return sorted(float(mpmath.re(r)) for r in roots)


def rips_brute_force(points, r, max_dim):
    """Every vertex subset of diameter <= r with at most max_dim + 1 vertices."""
    n = len(points)
    out = set()
    for size in range(1, max_dim + 2):
        for s in combinations(range(n), size):
            diam = max((math.dist(points[a], points[b]) for a, b in combinations(s, 2)), default=0.0)
            if diam <= r:
                out.add(s)
    return out


def faces_closed(simplices):
    members = set(simplices)
    return all(f in members for s in members for k in range(1, len(s)) for f in combinations(s, k))
