"""Spectral analysis of a GEDM through an explicit symmetrizing similarity.

With ``U`` orthogonal (first column ``1/sqrt(n)``, diagonalizing ``L``) and
``W = Diag(b/a, 1, ..., 1)``, the matrix ``W^-1 U' D U W`` is a symmetric
arrow matrix::

    [[(a^2 + b^2) s_1,  ab s_2, ...,  ab s_n     ],
     [ab s_2,          -2ab alpha_2, ...,  0      ],
     [ ...                                        ],
     [ab s_n,           0, ...,  -2ab alpha_n     ]]

with ``s = U' Diag(L) J U e_1``. No non-symmetric eigensolver is ever used:
spectra of ``D`` and of the bordered matrix ``[[D, 1], [1', 0]]`` are read
off symmetric matrices similar to them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matcore
from .edm import Gedm
from .exceptions import StructureViolation
from .matcore import EigenDecomposition, Tolerance


@dataclass(frozen=True, eq=False)
class Symmetrizer:
    u: np.ndarray
    w_ratio: float
    alphas: np.ndarray
    s: np.ndarray

    @property
    def w(self) -> np.ndarray:
        w = np.ones(self.u.shape[0])
        w[0] = self.w_ratio
        return w

    @property
    def uw(self) -> np.ndarray:
        """``U W`` (columns of U, first one scaled by b/a)."""
        return self.u * self.w

    @property
    def uw_inv(self) -> np.ndarray:
        """``(U W)^-1 = W^-1 U'``."""
        return self.u.T / self.w[:, None]


@dataclass(frozen=True, eq=False)
class GedmSpectrum:
    values: np.ndarray
    positive_count: int
    symmetric_form: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True, eq=False)
class BorderedForm:
    matrix: np.ndarray
    q: np.ndarray
    symmetric_form: np.ndarray
    values: np.ndarray
    delta: float


def householder_to_ones(n: int) -> np.ndarray:
    """Symmetric orthogonal ``H`` with ``H e_1 = 1/sqrt(n)``."""
    u = np.full(n, 1.0 / np.sqrt(n))
    v = -u
    v[0] += 1.0
    vv = float(v @ v)
    if vv == 0.0:
        return np.eye(n)
    return np.eye(n) - (2.0 / vv) * np.outer(v, v)


def make_symmetrizer(d: Gedm, tol: Tolerance | None = None) -> Symmetrizer:
    tol = matcore._tol(tol)
    lmat = d.laplacian.matrix
    n = d.n
    h = householder_to_ones(n)
    u = h.copy()
    alphas = np.zeros(n)
    if n > 1:
        basis = h[:, 1:]
        values, vectors = matcore.sym_eig(basis.T @ lmat @ basis, tol)
        order = np.argsort(values, kind="stable")
        u[:, 1:] = basis @ vectors[:, order]
        alphas[1:] = values[order]
    s = np.sqrt(n) * (u.T @ np.diag(lmat))
    return Symmetrizer(u, d.b / d.a, alphas, s)


def arrow_template(d: Gedm, sym: Symmetrizer) -> np.ndarray:
    ab = d.a * d.b
    t = np.diag(-2.0 * ab * sym.alphas)
    t[0, 0] = (d.a ** 2 + d.b ** 2) * sym.s[0]
    t[0, 1:] = ab * sym.s[1:]
    t[1:, 0] = ab * sym.s[1:]
    return t


def symmetric_form(d: Gedm, sym: Symmetrizer | None = None,
                   tol: Tolerance | None = None) -> np.ndarray:
    """``W^-1 U' D U W``, checked against the arrow template."""
    tol = matcore._tol(tol)
    if sym is None:
        sym = make_symmetrizer(d, tol)
    m = sym.uw_inv @ d.matrix @ sym.uw
    m = matcore.symmetric_part(m, tol)
    deviation = float(np.max(np.abs(m - arrow_template(d, sym))))
    thr = tol.threshold(m)
    if deviation > thr:
        raise StructureViolation(deviation, thr)
    return m


def spectrum(d: Gedm, sym: Symmetrizer | None = None, tol: Tolerance | None = None) -> GedmSpectrum:
    tol = matcore._tol(tol)
    m = symmetric_form(d, sym, tol)
    values, vectors = matcore.sym_eig(m, tol)
    positives = int(np.sum(values > tol.threshold(m)))
    return GedmSpectrum(values, positives, m, vectors)


def bordered(d: Gedm, sym: Symmetrizer | None = None, tol: Tolerance | None = None) -> BorderedForm:
    """Bordered matrix ``[[D, 1], [1', 0]]`` and a symmetric matrix similar to it.

    ``Q = K^-1 Dtilde K`` with ``K = Diag(U W, 1)`` has border entries
    ``sqrt(n) a/b`` (column) and ``sqrt(n) b/a`` (row). Conjugating by
    ``G = Diag(I, b/a)`` balances them to ``sqrt(n)`` on both sides.
    """
    tol = matcore._tol(tol)
    if sym is None:
        sym = make_symmetrizer(d, tol)
    n = d.n
    ones = np.ones(n)
    dt = matcore.bordered_matrix(d.matrix, ones)
    k = np.zeros((n + 1, n + 1))
    k[:n, :n] = sym.uw
    k[n, n] = 1.0
    k_inv = np.zeros((n + 1, n + 1))
    k_inv[:n, :n] = sym.uw_inv
    k_inv[n, n] = 1.0
    q = k_inv @ dt @ k
    g = np.ones(n + 1)
    g[n] = sym.w_ratio
    sym_form = matcore.symmetric_part((q * g[None, :]) / g[:, None], tol)
    values = matcore.eigvalsh(sym_form, tol)
    return BorderedForm(dt, q, sym_form, values, float(np.sqrt(n) * d.a / d.b))


def eigvec_matrix(d: Gedm, sym: Symmetrizer | None = None, spec: GedmSpectrum | None = None,
                  tol: Tolerance | None = None) -> np.ndarray:
    """``A = U W V`` with ``A^-1 D A = Diag(values)``."""
    tol = matcore._tol(tol)
    if sym is None:
        sym = make_symmetrizer(d, tol)
    if spec is None:
        spec = spectrum(d, sym, tol)
    return sym.uw @ spec.vectors


def eigvec_matrix_inverse(sym: Symmetrizer, spec: GedmSpectrum) -> np.ndarray:
    """``A^-1 = V' W^-1 U'``."""
    return spec.vectors.T @ sym.uw_inv


def decomposition(d: Gedm, tol: Tolerance | None = None) -> tuple[Symmetrizer, GedmSpectrum]:
    tol = matcore._tol(tol)
    sym = make_symmetrizer(d, tol)
    return sym, spectrum(d, sym, tol)


def as_eigendecomposition(spec: GedmSpectrum) -> EigenDecomposition:
    return EigenDecomposition(spec.values, spec.vectors)
