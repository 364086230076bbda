"""Brute-force reference computations for small matrices.

Everything here works in exact rational arithmetic (``fractions.Fraction``)
on the binary values of the float inputs, and shares no code with
:mod:`gedm.matcore`. Intended for tests and audits, not for speed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import ComplexRootsDetected

BISECTION_TOL = 1e-12


@dataclass(frozen=True)
class OracleResult:
    value: object
    method: str
    max_residual: float


def _exact(m):
    arr = np.asarray(m, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("oracle needs a square matrix")
    return [[Fraction(float(v)) for v in row] for row in arr]


def _det(rows):
    """Determinant by fraction-exact Gaussian elimination."""
    a = [row[:] for row in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            factor = a[r][c] / a[c][c]
            if factor:
                for k in range(c, n):
                    a[r][k] -= factor * a[c][k]
    return det


def oracle_det_small(m) -> Fraction:
    return _det(_exact(m))


def char_poly(m) -> list:
    """Coefficients ``c_0..c_n`` of ``det(x I - m)`` (highest degree last).

    ``c_{n-k} = (-1)^k * (sum of k x k principal minors)``.
    """
    a = _exact(m)
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    for k in range(1, n + 1):
        total = Fraction(0)
        for idx in itertools.combinations(range(n), k):
            total += _det([[a[i][j] for j in idx] for i in idx])
        coeffs[n - k] = (-1) ** k * total
    return coeffs


def _eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _derivative(coeffs):
    return [c * k for k, c in enumerate(coeffs)][1:]


def _bisect(coeffs, lo, hi):
    flo = _eval(coeffs, Fraction(lo))
    fhi = _eval(coeffs, Fraction(hi))
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        return None
    while hi - lo > BISECTION_TOL * max(abs(lo), abs(hi), 1.0):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fmid = _eval(coeffs, Fraction(mid))
        if fmid == 0:
            return mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _real_roots(coeffs, bound):
    """All roots (ascending, with multiplicity) of a real-rooted polynomial."""
    deg = len(coeffs) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [float(-coeffs[0] / coeffs[1])]
    crit = _real_roots(_derivative(coeffs), bound)
    edges = [-bound] + crit + [bound]
    roots = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        root = _bisect(coeffs, lo, hi)
        if root is None:
            # no sign change: a multiple root sits at the closer critical point
            vlo = abs(_eval(coeffs, Fraction(lo)))
            vhi = abs(_eval(coeffs, Fraction(hi)))
            root = lo if vlo <= vhi else hi
            scale = sum(abs(c) for c in coeffs) * Fraction(max(abs(root), 1.0)) ** deg
            if min(vlo, vhi) > scale * Fraction(1, 10 ** 6):
                raise ComplexRootsDetected("characteristic polynomial has non-real roots")
        roots.append(root)
    return roots


def oracle_eig_small(m) -> np.ndarray:
    """Eigenvalues (descending) of a small matrix with real spectrum."""
    arr = np.asarray(m, dtype=float)
    n = arr.shape[0]
    if n > 4:
        raise ValueError("oracle_eig_small supports n <= 4")
    coeffs = char_poly(arr)
    bound = 1.0 + float(max(abs(c) for c in coeffs[:-1]))
    return np.array(sorted(_real_roots(coeffs, bound), reverse=True))


def _rank_and_pivots(rows):
    a = [row[:] for row in rows]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        pivot = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                factor = a[i][c] / a[r][c]
                for k in range(c, nc):
                    a[i][k] -= factor * a[r][k]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return r, pivots


def oracle_rank_small(m) -> int:
    """Exact rank of the (binary-exact) input."""
    return _rank_and_pivots(_exact(m))[0]


def _matmul(x, y):
    return [[sum(x[i][k] * y[k][j] for k in range(len(y))) for j in range(len(y[0]))]
            for i in range(len(x))]


def _transpose(x):
    return [list(col) for col in zip(*x)]


def _inverse(x):
    n = len(x)
    a = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(x)]
    for c in range(n):
        pivot = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[pivot] = a[pivot], a[c]
        pv = a[c][c]
        a[c] = [v / pv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                factor = a[r][c]
                a[r] = [v - factor * w for v, w in zip(a[r], a[c])]
    return [row[n:] for row in a]


def oracle_pinv_exact(m):
    """Exact Moore-Penrose inverse via a full-rank factorization ``m = C R``.

    ``C`` holds the pivot columns of ``m``; then ``m^+ = R'(R R')^-1 (C'C)^-1 C'``.
    """
    a = _exact(m)
    n = len(a)
    r, pivots = _rank_and_pivots(a)
    if r == 0:
        return [[Fraction(0)] * n for _ in range(n)]
    c = [[a[i][j] for j in pivots] for i in range(n)]
    ct = _transpose(c)
    # R solves C R = m in the least-squares sense, exactly since col(m) = col(C)
    ctc_inv = _inverse(_matmul(ct, c))
    rmat = _matmul(ctc_inv, _matmul(ct, a))
    rt = _transpose(rmat)
    rrt_inv = _inverse(_matmul(rmat, rt))
    return _matmul(_matmul(rt, rrt_inv), _matmul(ctc_inv, ct))


def oracle_pinv_small(m) -> np.ndarray:
    arr = np.asarray(m, dtype=float)
    if arr.shape[0] > 6:
        raise ValueError("oracle_pinv_small supports n <= 6")
    return np.array([[float(v) for v in row] for row in oracle_pinv_exact(arr)])


def oracle_majorize(x, y, tol=1e-9) -> bool:
    """Majorization by exhaustive subset sums.

    ``x`` is majorized by ``y`` iff the totals agree and, for each k, the
    largest k-subset sum of ``x`` is at most the largest k-subset sum of ``y``.
    """
    x = [float(v) for v in x]
    y = [float(v) for v in y]
    if len(x) != len(y):
        raise ValueError("length mismatch")
    n = len(x)
    if abs(sum(x) - sum(y)) > tol:
        return False
    for k in range(1, n):
        bx = max(sum(c) for c in itertools.combinations(x, k))
        by = max(sum(c) for c in itertools.combinations(y, k))
        if bx > by + tol:
            return False
    return True


def eig_result(m) -> OracleResult:
    """Eigenvalues with the worst relative characteristic-polynomial residual."""
    values = oracle_eig_small(m)
    coeffs = char_poly(m)
    scale = sum(abs(c) for c in coeffs)
    worst = max((abs(float(_eval(coeffs, Fraction(float(v))) / scale)) for v in values),
                default=0.0)
    return OracleResult(values, "char-poly bisection (exact rational evaluation)", worst)
