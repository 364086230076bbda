"""The GEDM object ``d_ij = a^2 l_ii + b^2 l_jj - 2ab l_ij`` and its point model."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matcore
from .exceptions import (
    ConsistencyError,
    DimensionMismatch,
    NegativeEntry,
    NonpositiveScale,
    NonzeroDiagonal,
    NotAGedm,
    NotPsd,
    RowSumsNonzero,
)
from .laplacian import GeneralizedLaplacian, centering, validate
from .matcore import Tolerance, as_matrix


@dataclass(frozen=True, eq=False)
class Gedm:
    """A generalized Euclidean distance matrix together with its provenance ``(L, a, b)``."""

    matrix: np.ndarray
    laplacian: GeneralizedLaplacian
    a: float
    b: float

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def is_zero(self) -> bool:
        return not np.any(self.matrix)

    def is_symmetric(self, tol=None) -> bool:
        return abs(self.a - self.b) <= matcore._tol(tol).scaled(max(self.a, self.b))

    def transpose(self) -> "Gedm":
        """``D'`` is the GEDM of the same Laplacian with the scales swapped."""
        return Gedm(self.matrix.T.copy(), self.laplacian, self.b, self.a)


@dataclass(frozen=True, eq=False)
class PointRealization:
    """Rows are points ``x^i`` with Gram matrix ``L`` and centroid 0."""

    points: np.ndarray

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def _check_scales(a, b):
    a = float(a)
    b = float(b)
    if not (a > 0 and b > 0) or not (np.isfinite(a) and np.isfinite(b)):
        raise NonpositiveScale(f"a and b must be positive, got a={a!r}, b={b!r}")
    return a, b


def entrywise(lmat: np.ndarray, a: float, b: float) -> np.ndarray:
    """Evaluate the defining formula entry by entry.

    Diagonal entries use the algebraically equal ``(a - b)^2 l_ii``, which
    avoids cancellation when ``a`` is close to ``b``.
    """
    diag = np.diag(lmat)
    d = (a * a) * diag[:, None] + (b * b) * diag[None, :] - (2.0 * a * b) * lmat
    np.fill_diagonal(d, (a - b) ** 2 * diag)
    return d


def matrix_form(lmat: np.ndarray, a: float, b: float) -> np.ndarray:
    """``a^2 Diag(L) J + b^2 J Diag(L) - 2ab L``."""
    n = lmat.shape[0]
    ltil = np.diag(np.diag(lmat))
    j = np.ones((n, n))
    return (a * a) * (ltil @ j) + (b * b) * (j @ ltil) - (2.0 * a * b) * lmat


def build(l: GeneralizedLaplacian, a: float, b: float, tol: Tolerance | None = None,
          verify: bool = False) -> Gedm:
    """Construct the GEDM of ``l`` with scales ``a`` and ``b``.

    With ``verify=True`` the matrix form is evaluated too and compared with
    the entrywise formula.
    """
    a, b = _check_scales(a, b)
    tol = matcore._tol(tol)
    lmat = l.matrix
    d = entrywise(lmat, a, b)
    if verify:
        alt = matrix_form(lmat, a, b)
        gap = float(np.max(np.abs(alt - d)))
        if gap > tol.threshold(d):
            raise ConsistencyError(f"entrywise and matrix forms differ by {gap:.3e}")
    thr = tol.threshold(d)
    if np.any(d < -thr):
        raise ConsistencyError(f"GEDM entry {d.min():.6g} is negative beyond tolerance")
    d = np.maximum(d, 0.0)
    if a == b:
        np.fill_diagonal(d, 0.0)
    return Gedm(d, l, a, b)


def build_e(l: GeneralizedLaplacian, tol: Tolerance | None = None) -> np.ndarray:
    """The symmetric EDM ``Diag(L) J + J Diag(L) - 2L`` (the GEDM with a = b = 1)."""
    return build(l, 1.0, 1.0, tol).matrix


def realize(l: GeneralizedLaplacian, tol: Tolerance | None = None) -> PointRealization:
    tol = matcore._tol(tol)
    values, vectors = l.spectrum
    keep = values > tol.threshold(l.matrix)
    return PointRealization(vectors[:, keep] * np.sqrt(values[keep]))


def realization_distances(r: PointRealization, a: float, b: float) -> np.ndarray:
    x = r.points
    diff = a * x[:, None, :] - b * x[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def check_realization(r: PointRealization, d: Gedm, tol: Tolerance | None = None) -> bool:
    tol = matcore._tol(tol)
    if r.points.shape[0] != d.n:
        raise DimensionMismatch(f"{r.points.shape[0]} points for a GEDM of order {d.n}")
    gap = np.max(np.abs(realization_distances(r, d.a, d.b) - d.matrix))
    return bool(gap <= tol.threshold(d.matrix))


def recover_laplacian(d, a: float, b: float, tol: Tolerance | None = None) -> GeneralizedLaplacian:
    """Invert the GEDM formula for known scales, raising :class:`NotAGedm` on failure."""
    a, b = _check_scales(a, b)
    tol = matcore._tol(tol)
    d = as_matrix(d, "D", square=True)
    if np.any(d < -tol.threshold(d)):
        raise NegativeEntry("a GEDM is entrywise nonnegative")
    n = d.shape[0]
    if abs(a - b) > tol.scaled(max(a, b)):
        diag = np.diag(d) / (a - b) ** 2
        lmat = ((a * a) * diag[:, None] + (b * b) * diag[None, :] - d) / (2.0 * a * b)
        np.fill_diagonal(lmat, diag)
    else:
        dthr = tol.threshold(d)
        if np.max(np.abs(np.diag(d))) > dthr:
            raise NotAGedm("diagonal-mismatch", "equal scales require a zero diagonal")
        p = centering(n)
        lmat = -(p @ d @ p) / (2.0 * a * a)
    asym = float(np.max(np.abs(lmat - lmat.T)))
    if asym > tol.threshold(lmat):
        raise NotAGedm("asymmetric-L", f"max |l_ij - l_ji| = {asym:.3e}")
    # row sums before definiteness, so the reason names the cheaper invariant
    worst = float(np.max(np.abs(lmat.sum(axis=1))))
    if worst > tol.threshold(lmat):
        raise NotAGedm("nonzero-row-sum", f"max |row sum| = {worst:.3e}")
    try:
        return validate(lmat, tol)
    except RowSumsNonzero as exc:
        raise NotAGedm("nonzero-row-sum", str(exc)) from exc
    except NotPsd as exc:
        raise NotAGedm("not-PSD", str(exc)) from exc


def is_edm(d, tol: Tolerance | None = None) -> bool:
    """Menger-Schoenberg test: ``[[D, 1], [1', 0]]`` has exactly one positive eigenvalue."""
    tol = matcore._tol(tol)
    d = matcore.symmetric_part(as_matrix(d, "D", square=True), tol)
    thr = tol.threshold(d)
    if np.max(np.abs(np.diag(d))) > thr:
        raise NonzeroDiagonal("an EDM has a zero diagonal")
    if np.any(d < -thr):
        raise NegativeEntry("an EDM is entrywise nonnegative")
    bordered = matcore.bordered_matrix(d, np.ones(d.shape[0]))
    return matcore.inertia(bordered, tol).positives == 1
