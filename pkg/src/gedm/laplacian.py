"""Generalized Laplacians: symmetric positive semidefinite matrices with L1 = 0."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matcore
from .exceptions import (
    NegativeWeight,
    NonzeroDiagonal,
    NotPsd,
    RankUnreachable,
    RowSumsNonzero,
)
from .matcore import EigenDecomposition, Tolerance, as_matrix
from .rng import SplitMix64

MAX_RETRIES = 32


@dataclass(frozen=True, eq=False)
class GeneralizedLaplacian:
    """A validated generalized Laplacian with its cached spectrum.

    ``matrix`` is stored exactly symmetric. ``spectrum`` is descending, as
    returned by :func:`gedm.matcore.sym_eig`.
    """

    matrix: np.ndarray
    spectrum: EigenDecomposition
    trace: float

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def alphas(self) -> np.ndarray:
        """Eigenvalues in ascending order, 0 = alpha_1 <= ... <= alpha_n."""
        return self.spectrum.values[::-1].copy()

    def is_zero(self) -> bool:
        return not np.any(self.matrix)

    def rank(self, tol=None) -> int:
        tol = matcore._tol(tol)
        thr = tol.threshold(self.matrix)
        return int(np.sum(np.abs(self.spectrum.values) > thr))


def centering(n: int) -> np.ndarray:
    """The projection ``P = I - J/n`` onto the orthogonal complement of 1."""
    return np.eye(n) - np.full((n, n), 1.0 / n)


def validate(m, tol: Tolerance | None = None) -> GeneralizedLaplacian:
    tol = matcore._tol(tol)
    m = matcore.symmetric_part(as_matrix(m, "L", square=True), tol)
    thr = tol.threshold(m)
    spec = matcore.sym_eig(m, tol)
    if spec.values[-1] < -thr:
        raise NotPsd(spec.values[-1], thr)
    worst = float(np.max(np.abs(m.sum(axis=1))))
    if worst > thr:
        raise RowSumsNonzero(worst, thr)
    return GeneralizedLaplacian(m, spec, float(np.trace(m)))


def from_psd(f, tol: Tolerance | None = None) -> GeneralizedLaplacian:
    """Return ``P F P`` for a positive semidefinite ``F``."""
    tol = matcore._tol(tol)
    f = matcore.symmetric_part(as_matrix(f, "F", square=True), tol)
    min_eig = matcore.eigvalsh(f, tol)[-1]
    if min_eig < -tol.threshold(f):
        raise NotPsd(min_eig, tol.threshold(f))
    p = centering(f.shape[0])
    return validate(p @ f @ p, tol)


def from_graph(weights, tol: Tolerance | None = None) -> GeneralizedLaplacian:
    """Graph Laplacian ``Diag(W 1) - W`` of a nonnegative symmetric weight matrix."""
    tol = matcore._tol(tol)
    w = matcore.symmetric_part(as_matrix(weights, "weights", square=True), tol)
    if np.any(w < 0):
        raise NegativeWeight(f"weights must be nonnegative, min is {w.min():.6g}")
    if np.any(np.diag(w) != 0):
        raise NonzeroDiagonal("weight matrix must have a zero diagonal")
    return validate(np.diag(w.sum(axis=1)) - w, tol)


def random_laplacian(n: int, target_rank: int, seed: int,
                     tol: Tolerance | None = None) -> GeneralizedLaplacian:
    """Seeded random Laplacian ``P X X' P`` with ``X`` of shape (n, target_rank).

    Entries of ``X`` are uniform(-1, 1) from :class:`~gedm.rng.SplitMix64`.
    Draws are repeated from the same stream until the rank is exact.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 <= target_rank <= n - 1:
        raise ValueError(f"target_rank must lie in [0, {n - 1}], got {target_rank}")
    tol = matcore._tol(tol)
    rng = SplitMix64(seed)
    p = centering(n)
    for _ in range(MAX_RETRIES):
        x = rng.uniform(-1.0, 1.0, shape=(n, target_rank))
        lap = validate(p @ (x @ x.T) @ p, tol)
        if lap.rank(tol) == target_rank:
            return lap
    raise RankUnreachable(
        f"no rank-{target_rank} Laplacian of order {n} after {MAX_RETRIES} draws (seed {seed})"
    )
