"""The shifted matrix ``S = rho(D) I - D``, its real powers, and an M-matrix test."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matcore, spectra
from .edm import Gedm
from .exceptions import ConsistencyError, ZeroGedm
from .matcore import Tolerance, as_matrix

POWER_STEPS = 1000
POWER_TOL = 1e-12
#: gammas below -GAMMA_CLAMP_FACTOR * tol signal an internal inconsistency
GAMMA_CLAMP_FACTOR = 10.0


@dataclass(frozen=True, eq=False)
class ShiftedMatrix:
    """``S = A Diag(gammas) A^-1`` with ``gammas = rho - eigenvalues of D``."""

    s: np.ndarray
    rho: float
    gammas: np.ndarray
    eigbasis: np.ndarray
    eigbasis_inv: np.ndarray


def shift(d: Gedm, tol: Tolerance | None = None) -> ShiftedMatrix:
    tol = matcore._tol(tol)
    if d.is_zero():
        raise ZeroGedm("the shift needs a nonzero GEDM")
    sym, spec = spectra.decomposition(d, tol)
    rho = float(spec.values[0])
    gammas = rho - spec.values
    thr = tol.threshold(spec.symmetric_form)
    if np.any(gammas < -GAMMA_CLAMP_FACTOR * thr):
        raise ConsistencyError(f"negative gamma {gammas.min():.3e} beyond clamp range")
    gammas = np.maximum(gammas, 0.0)
    gammas[0] = 0.0
    a = sym.uw @ spec.vectors
    a_inv = spectra.eigvec_matrix_inverse(sym, spec)
    s = rho * np.eye(d.n) - d.matrix
    return ShiftedMatrix(s, rho, gammas, a, a_inv)


def frac_power(sm: ShiftedMatrix, r: float) -> np.ndarray:
    """``S^r = A Diag(gamma^r) A^-1`` with the convention ``0^r = 0``."""
    r = float(r)
    if not r > 0:
        raise ValueError(f"exponent must be positive, got {r!r}")
    return (sm.eigbasis * sm.gammas ** r) @ sm.eigbasis_inv


def perron_bounds(n_mat: np.ndarray, steps: int = POWER_STEPS, rtol: float = POWER_TOL,
                  stop_above: float | None = None, stop_below: float | None = None):
    """Collatz-Wielandt bounds ``lo <= rho(N) <= hi`` for a nonnegative ``N`` by power iteration.

    A small positive diagonal shift keeps the iterate strictly positive; it
    is removed from the returned bounds. Iteration ends when the bounds meet
    within ``rtol`` or once they settle a comparison against ``stop_above``/``stop_below``.
    """
    n = n_mat.shape[0]
    scale = float(np.max(np.abs(n_mat), initial=0.0))
    if scale == 0.0:
        return 0.0, 0.0
    c = 1e-3 * scale
    shifted = n_mat + c * np.eye(n)
    x = np.full(n, 1.0 / n)
    lo, hi = 0.0, np.inf
    for _ in range(steps):
        y = shifted @ x
        ratios = y / x
        lo = max(lo, float(ratios.min()) - c)
        hi = min(hi, float(ratios.max()) - c)
        if hi - lo <= rtol * max(hi, 1.0):
            break
        if stop_above is not None and lo > stop_above:
            break
        if stop_below is not None and hi <= stop_below:
            break
        x = y / y.sum()
    return lo, hi


def is_m_matrix(m, tol: Tolerance | None = None) -> bool:
    """Z-matrix ``m`` with ``rho* I - m`` of spectral radius at most ``rho*``.

    ``rho*`` is the largest diagonal entry of ``m``; the eigenvalues of ``m``
    are assumed real.
    """
    tol = matcore._tol(tol)
    m = as_matrix(m, square=True)
    thr = tol.threshold(m)
    off = m - np.diag(np.diag(m))
    if np.any(off > thr):
        return False
    rho_star = float(np.max(np.diag(m)))
    n_mat = np.maximum(rho_star * np.eye(m.shape[0]) - m, 0.0)
    limit = rho_star + thr
    lo, hi = perron_bounds(n_mat, stop_above=limit, stop_below=limit)
    if hi <= limit:
        return True
    if lo > limit:
        return False
    return 0.5 * (lo + hi) <= limit
