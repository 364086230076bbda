"""Dense real matrix kernel shared by every other module.

Matrices are plain ``numpy.ndarray`` objects of dtype float64. All
eigen-computations go through a cyclic Jacobi solver on symmetric input, so
results are deterministic for identical input.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._jacobi import jacobi_sweeps
from .exceptions import (
    LengthMismatch,
    NoConvergence,
    NotInColumnSpace,
    NotSquare,
    NotSymmetric,
)

TOL_ENV_VAR = "GEDM_TOL_REL"

#: Jacobi stops once off-diagonal Frobenius mass < JACOBI_REL_OFF * ||M||_F.
JACOBI_REL_OFF = 1e-13
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerance policy.

    The absolute threshold for a matrix ``M`` of order ``n`` is
    ``rel_eps * n * max|M|``, never smaller than ``floor``.
    """

    rel_eps: float = 1e-9
    floor: float = 1e-12

    def __post_init__(self):
        if not self.rel_eps > 0:
            raise ValueError(f"rel_eps must be positive, got {self.rel_eps!r}")
        if not self.floor >= 0:
            raise ValueError(f"floor must be nonnegative, got {self.floor!r}")

    def scaled(self, scale: float) -> float:
        return max(self.rel_eps * float(scale), self.floor)

    def threshold(self, m) -> float:
        m = np.asarray(m, dtype=float)
        if m.size == 0:
            return self.floor
        return self.scaled(max(m.shape) * float(np.max(np.abs(m))))

    @classmethod
    def from_env(cls, environ=None) -> "Tolerance":
        """Default tolerance, with ``rel_eps`` taken from ``GEDM_TOL_REL`` if set."""
        environ = os.environ if environ is None else environ
        raw = environ.get(TOL_ENV_VAR)
        if raw is None or raw.strip() == "":
            return cls()
        return cls(rel_eps=float(raw))


DEFAULT_TOL = Tolerance()


def _tol(tol):
    return DEFAULT_TOL if tol is None else tol


class InertiaTriple(NamedTuple):
    negatives: int
    nullity: int
    positives: int

    def __add__(self, other):
        return InertiaTriple(*(x + y for x, y in zip(self, other)))


class EigenDecomposition(NamedTuple):
    """Eigenvalues sorted descending, with orthonormal eigenvectors as columns."""

    values: np.ndarray
    vectors: np.ndarray


def as_matrix(m, name="matrix", square=False) -> np.ndarray:
    """Validate ``m`` as a finite 2-d float array and return it."""
    arr = np.asarray(m, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError(f"{name} must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    if square and arr.shape[0] != arr.shape[1]:
        raise NotSquare(f"{name} must be square, got shape {arr.shape}")
    return arr


def as_vector(x, name="vector") -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def symmetric_part(m, tol=None) -> np.ndarray:
    """Return ``(m + m')/2`` after checking ``m`` is symmetric within tolerance."""
    m = as_matrix(m, square=True)
    tol = _tol(tol)
    asym = float(np.max(np.abs(m - m.T)))
    thr = tol.threshold(m)
    if asym > thr:
        raise NotSymmetric(asym, thr)
    return 0.5 * (m + m.T)


def sym_eig(m, tol=None) -> EigenDecomposition:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations."""
    a = symmetric_part(m, tol)
    w, v, sweeps, converged = jacobi_sweeps(
        np.array(a, dtype=np.float64, order="C"), JACOBI_REL_OFF, JACOBI_MAX_SWEEPS
    )
    if not converged:
        raise NoConvergence(f"Jacobi did not converge in {sweeps} sweeps")
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(w[order], v[:, order])


def eigvalsh(m, tol=None) -> np.ndarray:
    return sym_eig(m, tol).values


def pinv(m, tol=None) -> np.ndarray:
    """Moore-Penrose inverse of a symmetric matrix.

    Eigenvalues with ``|lambda| <= tol.threshold(m)`` are treated as zero.
    """
    tol = _tol(tol)
    m = as_matrix(m, square=True)
    values, vectors = sym_eig(m, tol)
    keep = np.abs(values) > tol.threshold(m)
    vk = vectors[:, keep]
    return (vk / values[keep]) @ vk.T


def inertia(m, tol=None) -> InertiaTriple:
    tol = _tol(tol)
    values = eigvalsh(m, tol)
    thr = tol.threshold(m)
    neg = int(np.sum(values < -thr))
    pos = int(np.sum(values > thr))
    return InertiaTriple(neg, len(values) - neg - pos, pos)


def rank(m, tol=None) -> int:
    """Numerical rank: number of singular values above ``tol.threshold(m)``.

    Singular values of a non-symmetric ``m`` are read off the symmetric
    matrix ``[[0, m], [m', 0]]`` whose eigenvalues are ``+-sigma``.
    """
    tol = _tol(tol)
    m = as_matrix(m)
    thr = tol.threshold(m)
    r, c = m.shape
    if r == c and np.array_equal(m, m.T):
        values = eigvalsh(m, tol)
        return int(np.sum(np.abs(values) > thr))
    big = np.zeros((r + c, r + c))
    big[:r, r:] = m
    big[r:, :r] = m.T
    values = eigvalsh(big, tol)
    return int(np.sum(values > thr))


def is_psd(m, tol=None) -> bool:
    tol = _tol(tol)
    values = eigvalsh(m, tol)
    return bool(values[-1] >= -tol.threshold(m))


def majorization_tolerance(x, y, tol=None) -> float:
    tol = _tol(tol)
    scale = max(float(np.max(np.abs(x), initial=0.0)), float(np.max(np.abs(y), initial=0.0)))
    return tol.scaled(len(x) * scale)


def prefix_gaps(x, y):
    """Descending prefix-sum slack ``sum_k(y) - sum_k(x)`` for k = 1..n.

    The last entry is the difference of the totals.
    """
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    if x.shape != y.shape:
        raise LengthMismatch(f"lengths differ: {len(x)} vs {len(y)}")
    xs = np.sort(x, kind="stable")[::-1]
    ys = np.sort(y, kind="stable")[::-1]
    return np.cumsum(ys) - np.cumsum(xs)


def majorization_violation(x, y, tol=None):
    """Index k (1-based) of the first violated condition of ``x`` majorized by ``y``.

    Returns ``None`` when the majorization holds. ``k == n`` means the totals differ.
    """
    gaps = prefix_gaps(x, y)
    thr = majorization_tolerance(x, y, tol)
    n = len(gaps)
    for k in range(n - 1):
        if gaps[k] < -thr:
            return k + 1
    if n and abs(gaps[-1]) > thr:
        return n
    return None


def majorizes(x, y, tol=None) -> bool:
    """True iff ``x`` is majorized by ``y`` (equal sums, dominated prefix sums)."""
    return majorization_violation(x, y, tol) is None


def bordered_matrix(a, p) -> np.ndarray:
    """``[[a, p], [p', 0]]``."""
    a = as_matrix(a, "a", square=True)
    p = as_vector(p, "p")
    n = a.shape[0]
    if p.shape[0] != n:
        raise LengthMismatch(f"border has length {p.shape[0]}, expected {n}")
    out = np.zeros((n + 1, n + 1))
    out[:n, :n] = a
    out[:n, n] = p
    out[n, :n] = p
    return out


def haynsworth_check(a, p, tol=None) -> bool:
    """Check In([[a, p], [p', 0]]) == In(a) + In(-p' a^+ p) for p in col(a)."""
    tol = _tol(tol)
    a = symmetric_part(a, tol)
    p = as_vector(p, "p")
    if p.shape[0] != a.shape[0]:
        raise LengthMismatch(f"p has length {p.shape[0]}, matrix has order {a.shape[0]}")
    a_pinv = pinv(a, tol)
    miss = float(np.max(np.abs(a @ (a_pinv @ p) - p), initial=0.0))
    if miss > tol.scaled(a.shape[0] * max(float(np.max(np.abs(p), initial=0.0)), 1.0)):
        raise NotInColumnSpace(f"p is not in col(a): residual {miss:.3e}")
    schur = -float(p @ a_pinv @ p)
    pnorm2 = float(p @ p)
    scalar_thr = tol.scaled(a.shape[0] * float(np.max(np.abs(a_pinv))) * pnorm2)
    if schur > scalar_thr:
        schur_in = InertiaTriple(0, 0, 1)
    elif schur < -scalar_thr:
        schur_in = InertiaTriple(1, 0, 0)
    else:
        schur_in = InertiaTriple(0, 1, 0)
    return inertia(bordered_matrix(a, p), tol) == inertia(a, tol) + schur_in
