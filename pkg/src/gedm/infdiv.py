"""Infinitely divisible matrices ``[1/f_ij]`` with ``f_ij = max(d_ij, d_ji)``.

The Laplacian here is the same ``L`` as elsewhere in the package; it must
have rank n - 1. Infinite divisibility quantifies over every exponent
``r >= 0``; it is certified on a finite grid of exponents.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import matcore
from .edm import Gedm
from .exceptions import NonpositiveEntry, RankHypothesisViolated
from .matcore import Tolerance

DEFAULT_EXPONENTS = (0.1, 0.25, 0.5, 1.0, 2.0, 3.0)


@dataclass(frozen=True, eq=False)
class InfDivCertificate:
    f: np.ndarray
    reciprocal: np.ndarray
    tested_exponents: tuple
    min_eigenvalue_per_exponent: np.ndarray
    certified: bool
    thresholds: np.ndarray = field(default=None)


def build_f(d: Gedm) -> np.ndarray:
    return np.maximum(d.matrix, d.matrix.T)


def certify(d: Gedm, exponents=DEFAULT_EXPONENTS, tol: Tolerance | None = None) -> InfDivCertificate:
    tol = matcore._tol(tol)
    exponents = tuple(float(r) for r in exponents)
    if any(not r > 0 for r in exponents):
        raise ValueError(f"exponents must be positive, got {exponents}")
    rank = d.laplacian.rank(tol)
    if rank != d.n - 1:
        raise RankHypothesisViolated(f"rank(L) = {rank}, expected n - 1 = {d.n - 1}")
    f = build_f(d)
    if np.any(f <= 0):
        i, j = np.unravel_index(np.argmin(f), f.shape)
        raise NonpositiveEntry(f"f[{i},{j}] = {f[i, j]:.6g} is not positive")
    recip = 1.0 / f
    mins = []
    thresholds = []
    for r in exponents:
        powered = recip ** r
        mins.append(matcore.eigvalsh(powered, tol)[-1])
        thresholds.append(tol.threshold(powered))
    mins = np.array(mins)
    thresholds = np.array(thresholds)
    return InfDivCertificate(f, recip, exponents, mins, bool(np.all(mins >= -thresholds)),
                             thresholds)


def one_positive_eig_check(f, tol: Tolerance | None = None) -> bool:
    """True iff ``f`` has exactly one positive eigenvalue and it is simple."""
    tol = matcore._tol(tol)
    values = matcore.eigvalsh(f, tol)
    thr = tol.threshold(f)
    if matcore.inertia(f, tol).positives != 1:
        return False
    return len(values) == 1 or values[0] - values[1] > thr
