"""Schur-type majorization results for GEDMs, as checkable reports."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matcore, spectra
from .edm import Gedm
from .exceptions import ZeroGedm
from .matcore import Tolerance


@dataclass(frozen=True, eq=False)
class MajorizationReport:
    """Outcome of testing ``left`` majorized by ``right``.

    ``worst_prefix_gap`` is the smallest slack over the descending prefix
    sums (k = 1..n), and ``prefix_index`` the 1-based k where it occurs.
    """

    left: np.ndarray
    right: np.ndarray
    holds: bool
    worst_prefix_gap: float
    prefix_index: int
    tolerance: float


def report(left, right, tol: Tolerance | None = None) -> MajorizationReport:
    gaps = matcore.prefix_gaps(left, right)
    thr = matcore.majorization_tolerance(left, right, tol)
    k = int(np.argmin(gaps))
    holds = bool(gaps[k] >= -thr and abs(gaps[-1]) <= thr)
    return MajorizationReport(np.asarray(left, float), np.asarray(right, float), holds,
                              float(gaps[k]), k + 1, thr)


def _nonzero(d: Gedm):
    if d.is_zero():
        raise ZeroGedm("majorization results are stated for nonzero GEDMs")


def diag_vs_spectrum(d: Gedm, tol: Tolerance | None = None) -> MajorizationReport:
    """``diag(D)`` majorized by the (real) spectrum of ``D``."""
    _nonzero(d)
    return report(np.diag(d.matrix), spectra.spectrum(d, tol=tol).values, tol)


def symmetric_part_spectrum(d: Gedm, tol: Tolerance | None = None) -> np.ndarray:
    return matcore.eigvalsh(0.5 * (d.matrix + d.matrix.T), tol)


def spectrum_vs_symmetric_part(d: Gedm, tol: Tolerance | None = None) -> MajorizationReport:
    """Spectrum of ``D`` majorized by the spectrum of ``(D + D')/2``."""
    _nonzero(d)
    return report(spectra.spectrum(d, tol=tol).values, symmetric_part_spectrum(d, tol), tol)


def spectral_radius_bound(d: Gedm, tol: Tolerance | None = None) -> tuple[float, float, bool]:
    """``(rho(D), rho((D + D')/2), rho(D) <= rho((D + D')/2) + tol)``."""
    _nonzero(d)
    tol = matcore._tol(tol)
    rho_d = float(np.max(np.abs(spectra.spectrum(d, tol=tol).values)))
    sym_values = symmetric_part_spectrum(d, tol)
    rho_s = float(np.max(np.abs(sym_values)))
    thr = matcore.majorization_tolerance(sym_values, sym_values, tol)
    return rho_d, rho_s, rho_d <= rho_s + thr


def arrow_diagonal(d: Gedm, tol: Tolerance | None = None) -> np.ndarray:
    """``((a^2 + b^2) trace(L), -2ab alpha_2, ..., -2ab alpha_n)``."""
    sym = spectra.make_symmetrizer(d, tol)
    x = -2.0 * d.a * d.b * sym.alphas
    x[0] = (d.a ** 2 + d.b ** 2) * d.laplacian.trace
    return x


def diag_claim(d: Gedm, tol: Tolerance | None = None) -> MajorizationReport:
    """``(a - b)^2 diag(L)`` majorized by the diagonal of the symmetric arrow form."""
    left = (d.a - d.b) ** 2 * np.diag(d.laplacian.matrix)
    return report(left, arrow_diagonal(d, tol), tol)
