"""Moore-Penrose theory of a GEDM: null space, ``1' D^+ 1``, circum test, closed-form inverse.

``D^+`` is computed as ``U W M^+ W^-1 U'`` where ``M = W^-1 U' D U W`` is the
symmetric form. This is the Moore-Penrose inverse because ``e_1`` lies in
``col(M)`` (since 1 lies in ``col(D)``), so the projector ``M M^+`` commutes
with ``W``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matcore, spectra
from .edm import Gedm, build_e
from .exceptions import NegativeInvariantViolated, NotCircum, ZeroGedm
from .matcore import Tolerance
from .rng import SplitMix64

#: rank-formula checks are skipped when |1'D^+1| lies within this factor of its tolerance
AMBIGUITY_FACTOR = 10.0
#: projector comparisons allow this multiple of the base tolerance
PROJECTOR_FACTOR = 100.0


@dataclass(frozen=True, eq=False)
class PinvBundle:
    dagger: np.ndarray
    one_d_one: float
    circum: bool
    null_basis: np.ndarray
    rank: int


def _require_nonzero(d: Gedm):
    if d.is_zero():
        raise ZeroGedm("operation requires a nonzero GEDM")


def _parts(d: Gedm, tol):
    sym = spectra.make_symmetrizer(d, tol)
    spec = spectra.spectrum(d, sym, tol)
    return sym, spec


def dagger(d: Gedm, tol: Tolerance | None = None) -> np.ndarray:
    tol = matcore._tol(tol)
    sym, spec = _parts(d, tol)
    m_pinv = matcore.pinv(spec.symmetric_form, tol)
    return sym.uw @ m_pinv @ sym.uw_inv


def penrose_residuals(m: np.ndarray, x: np.ndarray) -> tuple[float, float, float, float]:
    """Relative residuals of the four Penrose identities for ``x`` as the inverse of ``m``."""
    mx = m @ x
    xm = x @ m
    sm = max(float(np.max(np.abs(m))), 1e-300)
    sx = max(float(np.max(np.abs(x))), 1e-300)
    r1 = float(np.max(np.abs(mx @ m - m))) / sm
    r2 = float(np.max(np.abs(xm @ x - x))) / sx
    sp = max(float(np.max(np.abs(mx))), 1e-300)
    r3 = float(np.max(np.abs(mx - mx.T))) / sp
    sq = max(float(np.max(np.abs(xm))), 1e-300)
    r4 = float(np.max(np.abs(xm - xm.T))) / sq
    return r1, r2, r3, r4


def null_space(d: Gedm, tol: Tolerance | None = None) -> np.ndarray:
    """Orthonormal basis of ``null(D)`` as columns (possibly zero columns)."""
    tol = matcore._tol(tol)
    _require_nonzero(d)
    sym, spec = _parts(d, tol)
    zero = np.abs(spec.values) <= tol.threshold(spec.symmetric_form)
    raw = sym.uw @ spec.vectors[:, zero]
    if raw.shape[1] == 0:
        return raw
    q, _ = np.linalg.qr(raw)
    return q


def scalar_tolerance(dag: np.ndarray, tol: Tolerance | None = None) -> float:
    """Tolerance for ``1' X 1``: base threshold scaled by n^2 max|X|."""
    tol = matcore._tol(tol)
    n = dag.shape[0]
    return tol.scaled(n * n * float(np.max(np.abs(dag))))


def one_d_one(d: Gedm, tol: Tolerance | None = None, dag: np.ndarray | None = None) -> float:
    tol = matcore._tol(tol)
    if dag is None:
        dag = dagger(d, tol)
    value = float(dag.sum())
    if value < -scalar_tolerance(dag, tol):
        raise NegativeInvariantViolated(f"1'D^+1 = {value:.6g} is negative")
    return value


def random_ginverse(d: Gedm, dag: np.ndarray, seed: int) -> np.ndarray:
    """``D^+ + (I - D^+ D) R + S (I - D D^+)`` with seeded uniform(-1, 1) ``R`` and ``S``."""
    rng = SplitMix64(seed)
    n = d.n
    r = rng.uniform(-1.0, 1.0, shape=(n, n))
    s = rng.uniform(-1.0, 1.0, shape=(n, n))
    eye = np.eye(n)
    return dag + (eye - dag @ d.matrix) @ r + s @ (eye - d.matrix @ dag)


def ginverse_invariance_check(d: Gedm, seed: int, tol: Tolerance | None = None,
                              dag: np.ndarray | None = None) -> bool:
    tol = matcore._tol(tol)
    if dag is None:
        dag = dagger(d, tol)
    g = random_ginverse(d, dag, seed)
    gap = abs(float(g.sum()) - float(dag.sum()))
    return gap <= scalar_tolerance(np.abs(g) + np.abs(dag), tol)


def classify_circum(d: Gedm, tol: Tolerance | None = None, dag: np.ndarray | None = None) -> bool:
    tol = matcore._tol(tol)
    _require_nonzero(d)
    if dag is None:
        dag = dagger(d, tol)
    return one_d_one(d, tol, dag) > scalar_tolerance(dag, tol)


def circum_ambiguous(d: Gedm, tol: Tolerance | None = None, dag: np.ndarray | None = None) -> bool:
    """True when ``|1'D^+1|`` is within a factor of 10 of its threshold."""
    tol = matcore._tol(tol)
    if dag is None:
        dag = dagger(d, tol)
    thr = scalar_tolerance(dag, tol)
    value = abs(float(dag.sum()))
    return thr / AMBIGUITY_FACTOR <= value <= thr * AMBIGUITY_FACTOR


def expected_rank(d: Gedm, tol: Tolerance | None = None, dag: np.ndarray | None = None) -> int:
    tol = matcore._tol(tol)
    circum = classify_circum(d, tol, dag)
    return d.laplacian.rank(tol) + (1 if circum else 2)


def rank_formula_check(d: Gedm, tol: Tolerance | None = None, dag: np.ndarray | None = None) -> bool:
    tol = matcore._tol(tol)
    _require_nonzero(d)
    return matcore.rank(d.matrix, tol) == expected_rank(d, tol, dag)


def mp_formula(d: Gedm, tol: Tolerance | None = None, dag: np.ndarray | None = None) -> np.ndarray:
    """Closed form ``-L^+/(2ab) + (D^+ 1)(1' D^+) / (1' D^+ 1)`` for circum GEDMs."""
    tol = matcore._tol(tol)
    if dag is None:
        dag = dagger(d, tol)
    if not classify_circum(d, tol, dag):
        raise NotCircum("closed-form inverse needs 1'D^+1 > 0")
    ones = np.ones(d.n)
    col = dag @ ones
    row = ones @ dag
    l_pinv = matcore.pinv(d.laplacian.matrix, tol)
    return -l_pinv / (2.0 * d.a * d.b) + np.outer(col, row) / float(ones @ col)


def projector(basis: np.ndarray) -> np.ndarray:
    if basis.shape[1] == 0:
        return np.zeros((basis.shape[0], basis.shape[0]))
    return basis @ basis.T


def symmetric_null_basis(m: np.ndarray, tol: Tolerance | None = None) -> np.ndarray:
    tol = matcore._tol(tol)
    values, vectors = matcore.sym_eig(m, tol)
    return vectors[:, np.abs(values) <= tol.threshold(m)]


def laplacian_null_in_ones_perp(d: Gedm, tol: Tolerance | None = None) -> np.ndarray:
    """Basis of ``null(L)`` intersected with the complement of 1."""
    tol = matcore._tol(tol)
    sym = spectra.make_symmetrizer(d, tol)
    zero = np.abs(sym.alphas) <= tol.threshold(d.laplacian.matrix)
    zero[0] = False
    return sym.u[:, zero]


def projector_tolerance(n: int, tol: Tolerance | None = None) -> float:
    return PROJECTOR_FACTOR * matcore._tol(tol).scaled(n)


def null_equalities_residual(d: Gedm, tol: Tolerance | None = None,
                             dag: np.ndarray | None = None) -> float:
    """Largest projector gap among the null-space identities that apply to ``d``.

    Always compares ``null(D)`` with ``null(E)``; for circum GEDMs also with
    ``null(D')`` and ``null(L)`` restricted to the complement of 1.
    """
    tol = matcore._tol(tol)
    _require_nonzero(d)
    p_d = projector(null_space(d, tol))
    p_e = projector(symmetric_null_basis(build_e(d.laplacian, tol), tol))
    gaps = [float(np.max(np.abs(p_d - p_e)))]
    if classify_circum(d, tol, dag):
        p_dt = projector(null_space(d.transpose(), tol))
        p_l = projector(laplacian_null_in_ones_perp(d, tol))
        gaps.append(float(np.max(np.abs(p_d - p_dt))))
        gaps.append(float(np.max(np.abs(p_d - p_l))))
    return max(gaps)


def null_equalities_check(d: Gedm, tol: Tolerance | None = None, dag: np.ndarray | None = None) -> bool:
    return null_equalities_residual(d, tol, dag) <= projector_tolerance(d.n, tol)


def e_equivalence_check(d: Gedm, tol: Tolerance | None = None, dag: np.ndarray | None = None) -> bool:
    tol = matcore._tol(tol)
    _require_nonzero(d)
    e_pinv = matcore.pinv(build_e(d.laplacian, tol), tol)
    e_positive = float(e_pinv.sum()) > scalar_tolerance(e_pinv, tol)
    return classify_circum(d, tol, dag) == e_positive


def pinv_bundle(d: Gedm, tol: Tolerance | None = None) -> PinvBundle:
    tol = matcore._tol(tol)
    _require_nonzero(d)
    dag = dagger(d, tol)
    value = one_d_one(d, tol, dag)
    return PinvBundle(
        dagger=dag,
        one_d_one=value,
        circum=classify_circum(d, tol, dag),
        null_basis=null_space(d, tol),
        rank=matcore.rank(d.matrix, tol),
    )
