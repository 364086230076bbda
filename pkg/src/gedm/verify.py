"""Audit: run every checkable predicate on one GEDM instance.

Each check yields a :class:`CheckEntry` with a status of ``"pass"``,
``"fail"``, ``"skip"`` (hypotheses not met) or ``"error"`` (the check
raised). A :class:`VerificationReport` passes iff no entry failed or errored.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__, edm, infdiv, majorize, matcore, moore_penrose as mp, mpower, spectra
from .edm import Gedm
from .exceptions import GedmError, NotAGedm, ZeroGedm
from .laplacian import centering
from .matcore import Tolerance

#: residual limits, relative unless noted
PENROSE_LIMIT = 1e-8
ONE_PERP_LIMIT = 1e-8
MP_FORMULA_LIMIT = 1e-8
PROJECTOR_LIMIT = 1e-6
M_MATRIX_EXPONENTS = (0.3, 0.5, 0.9)
GINVERSE_DRAWS = 10

PASS, FAIL, SKIP, ERROR = "pass", "fail", "skip", "error"


@dataclass
class CheckEntry:
    id: str
    status: str
    residual: float | None = None
    elapsed: float = 0.0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status in (PASS, SKIP)


@dataclass
class VerificationReport:
    instance: dict
    entries: list = field(default_factory=list)
    tolerance: dict = field(default_factory=dict)
    tool: str = "gedm"
    version: str = __version__
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def entry(self, check_id: str) -> CheckEntry:
        for e in self.entries:
            if e.id == check_id:
                return e
        raise KeyError(check_id)

    def to_dict(self) -> dict:
        return {
            "tool": self.tool,
            "version": self.version,
            "passed": self.passed,
            "instance": dict(self.instance),
            "tolerance": dict(self.tolerance),
            "entries": [asdict(e) for e in self.entries],
            "data": dict(self.data),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "VerificationReport":
        return cls(
            instance=dict(obj["instance"]),
            entries=[CheckEntry(**e) for e in obj["entries"]],
            tolerance=dict(obj.get("tolerance", {})),
            tool=obj.get("tool", "gedm"),
            version=obj.get("version", __version__),
            data=dict(obj.get("data", {})),
        )


def tolerance_dict(tol: Tolerance) -> dict:
    return {"rel_eps": tol.rel_eps, "floor": tol.floor}


def _rel(x: float, scale: float) -> float:
    return x / scale if scale > 0 else x


class _Context:
    """Lazily shared intermediate results for one instance."""

    def __init__(self, d: Gedm, tol: Tolerance):
        self.d = d
        self.tol = tol
        self.sym = spectra.make_symmetrizer(d, tol)
        self.spec = spectra.spectrum(d, self.sym, tol)
        self.dag = mp.dagger(d, tol)
        self.circum = mp.classify_circum(d, tol, self.dag)


def _run(check_id, fn, *args):
    start = time.perf_counter()
    try:
        outcome = fn(*args)
    except GedmError as exc:
        return CheckEntry(check_id, ERROR, None, time.perf_counter() - start,
                          f"{type(exc).__name__}: {exc}")
    status, residual, detail = outcome
    if residual is not None:
        residual = float(residual)
    return CheckEntry(check_id, status, residual, time.perf_counter() - start, detail)


def _verdict(ok, residual, detail=""):
    return (PASS if ok else FAIL), residual, detail


# -- individual checks ------------------------------------------------------------

def check_build_paths(c):
    d = c.d
    alt = edm.matrix_form(d.laplacian.matrix, d.a, d.b)
    gap = float(np.max(np.abs(alt - d.matrix)))
    return _verdict(gap <= c.tol.threshold(d.matrix), gap)


def check_diagonal(c):
    d = c.d
    gap = float(np.max(np.abs(np.diag(d.matrix) - (d.a - d.b) ** 2 * np.diag(d.laplacian.matrix))))
    return _verdict(gap <= c.tol.threshold(d.matrix), gap)


def check_realization(c):
    r = edm.realize(c.d.laplacian, c.tol)
    gap = float(np.max(np.abs(edm.realization_distances(r, c.d.a, c.d.b) - c.d.matrix)))
    return _verdict(edm.check_realization(r, c.d, c.tol), gap, f"dimension {r.dim}")


def check_recovery(c):
    d = c.d
    lap = edm.recover_laplacian(d.matrix, d.a, d.b, c.tol)
    gap = float(np.max(np.abs(lap.matrix - d.laplacian.matrix)))
    amplification = max(1.0, (d.a ** 2 + d.b ** 2) / (2.0 * d.a * d.b))
    return _verdict(gap <= amplification * c.tol.threshold(d.laplacian.matrix), gap)


def check_one_positive(c):
    defect = abs(c.spec.positive_count - 1)
    return _verdict(defect == 0, defect, f"{c.spec.positive_count} positive eigenvalue(s)")


def check_bordered(c):
    bf = spectra.bordered(c.d, c.sym, c.tol)
    count = int(np.sum(bf.values > c.tol.threshold(bf.symmetric_form)))
    return _verdict(count == 1, abs(count - 1), f"{count} positive eigenvalue(s)")


def check_diagonalization(c):
    a = c.sym.uw @ c.spec.vectors
    a_inv = spectra.eigvec_matrix_inverse(c.sym, c.spec)
    gap = float(np.max(np.abs(a_inv @ c.d.matrix @ a - np.diag(c.spec.values))))
    rel = _rel(gap, float(np.max(np.abs(c.d.matrix))))
    return _verdict(rel <= PENROSE_LIMIT, rel)


def check_penrose(c):
    worst = max(mp.penrose_residuals(c.d.matrix, c.dag))
    return _verdict(worst <= PENROSE_LIMIT, worst)


def check_null_perp(c):
    basis = mp.null_space(c.d, c.tol)
    worst = float(np.max(np.abs(basis.sum(axis=0)), initial=0.0))
    return _verdict(worst <= ONE_PERP_LIMIT, worst, f"nullity {basis.shape[1]}")


def check_ones_in_col(c):
    ones = np.ones(c.d.n)
    g1 = float(np.max(np.abs(c.d.matrix @ (c.dag @ ones) - ones)))
    dt = c.d.transpose()
    g2 = float(np.max(np.abs(dt.matrix @ (mp.dagger(dt, c.tol) @ ones) - ones)))
    worst = max(g1, g2)
    return _verdict(worst <= ONE_PERP_LIMIT, worst)


def check_one_d_one(c):
    value = float(c.dag.sum())
    return _verdict(value >= -ONE_PERP_LIMIT * max(1.0, float(np.max(np.abs(c.dag)))), value,
                    "circum" if c.circum else "non-circum")


def check_ginverse(c, seed=0):
    ok = all(mp.ginverse_invariance_check(c.d, seed + k, c.tol, c.dag) for k in range(GINVERSE_DRAWS))
    return _verdict(ok, None, f"{GINVERSE_DRAWS} random g-inverses")


def check_neg_pdp(c):
    p = centering(c.d.n)
    k = p @ c.dag @ p
    asym = float(np.max(np.abs(k - k.T)))
    scale = max(float(np.max(np.abs(c.dag))), 1e-300)
    min_eig = float(matcore.eigvalsh(-0.5 * (k + k.T))[-1])
    ok = min_eig >= -PENROSE_LIMIT * scale and asym <= PENROSE_LIMIT * scale
    return _verdict(ok, max(-min_eig, asym) / scale)


def check_rank_formula(c):
    if mp.circum_ambiguous(c.d, c.tol, c.dag):
        return SKIP, float(c.dag.sum()), "1'D^+1 in the ambiguous zone"
    expected = mp.expected_rank(c.d, c.tol, c.dag)
    got = matcore.rank(c.d.matrix, c.tol)
    return _verdict(got == expected, abs(got - expected), f"rank(D) = {got}, expected {expected}")


def check_mp_formula(c):
    if not c.circum:
        return SKIP, None, "non-circum"
    gap = float(np.max(np.abs(mp.mp_formula(c.d, c.tol, c.dag) - c.dag)))
    rel = _rel(gap, float(np.max(np.abs(c.dag))))
    return _verdict(rel <= MP_FORMULA_LIMIT, rel)


def check_null_equalities(c):
    gap = mp.null_equalities_residual(c.d, c.tol, c.dag)
    return _verdict(gap <= PROJECTOR_LIMIT, gap)


def check_e_equivalence(c):
    return _verdict(mp.e_equivalence_check(c.d, c.tol, c.dag), None)


def check_haynsworth(c):
    if not c.circum:
        return SKIP, None, "non-circum"
    p = np.zeros(c.d.n)
    p[0] = np.sqrt(c.d.n)
    return _verdict(matcore.haynsworth_check(c.spec.symmetric_form, p, c.tol), None)


def _majorization(rep):
    scale = max(float(np.max(np.abs(rep.right))), 1e-300)
    ok = rep.worst_prefix_gap >= -PENROSE_LIMIT * scale and rep.holds
    return _verdict(ok, rep.worst_prefix_gap, f"tightest prefix k = {rep.prefix_index}")


def check_diag_majorization(c):
    return _majorization(majorize.diag_vs_spectrum(c.d, c.tol))


def check_sym_majorization(c):
    return _majorization(majorize.spectrum_vs_symmetric_part(c.d, c.tol))


def check_spectral_radius(c):
    rho_d, rho_s, _ = majorize.spectral_radius_bound(c.d, c.tol)
    return _verdict(rho_d <= rho_s + PENROSE_LIMIT * max(rho_s, 1.0), rho_d - rho_s)


def check_m_matrix(c):
    sm = mpower.shift(c.d, c.tol)
    bad = [r for r in M_MATRIX_EXPONENTS if not mpower.is_m_matrix(mpower.frac_power(sm, r), c.tol)]
    detail = "exponents " + ", ".join(str(r) for r in M_MATRIX_EXPONENTS)
    if bad:
        detail += "; failed for " + ", ".join(str(r) for r in bad)
    return _verdict(not bad, len(bad), detail)


def check_infdiv(c):
    d = c.d
    if d.laplacian.rank(c.tol) != d.n - 1:
        return SKIP, None, "rank(L) < n - 1"
    if np.any(np.diag(infdiv.build_f(d)) <= 0):
        return SKIP, None, "zero diagonal in F (a = b): reciprocal undefined"
    cert = infdiv.certify(d, tol=c.tol)
    worst = float(np.min(cert.min_eigenvalue_per_exponent))
    return _verdict(cert.certified, worst)


CHECKS = (
    ("gedm.build_paths", check_build_paths),
    ("gedm.diagonal_identity", check_diagonal),
    ("gedm.realization", check_realization),
    ("gedm.recovery", check_recovery),
    ("spectra.one_positive", check_one_positive),
    ("spectra.bordered_one_positive", check_bordered),
    ("spectra.diagonalization", check_diagonalization),
    ("pinv.penrose", check_penrose),
    ("pinv.null_in_ones_perp", check_null_perp),
    ("pinv.ones_in_col", check_ones_in_col),
    ("pinv.one_d_one_nonneg", check_one_d_one),
    ("pinv.ginverse_invariance", check_ginverse),
    ("pinv.neg_pdp_psd", check_neg_pdp),
    ("pinv.rank_formula", check_rank_formula),
    ("pinv.mp_formula", check_mp_formula),
    ("pinv.null_equalities", check_null_equalities),
    ("pinv.e_equivalence", check_e_equivalence),
    ("pinv.haynsworth", check_haynsworth),
    ("majorize.diag_vs_spectrum", check_diag_majorization),
    ("majorize.spectrum_vs_symmetric_part", check_sym_majorization),
    ("majorize.spectral_radius", check_spectral_radius),
    ("mpower.m_matrix", check_m_matrix),
    ("infdiv.certificate", check_infdiv),
)


def describe(d: Gedm, **extra) -> dict:
    info = {"n": d.n, "a": d.a, "b": d.b}
    info.update({k: v for k, v in extra.items() if v is not None})
    return info


CHECK_IDS = tuple(cid for cid, _ in CHECKS)


def grid_instance(k: int) -> tuple[int, int]:
    """``(n, rank)`` for the ``k``-th instance of the audit grid.

    Cycles through ``n = 2..10`` and, for each, every ``rank = 1..n-1``.
    """
    n = 2 + k % 9
    return n, 1 + (k // 9) % (n - 1)


def verify(d: Gedm, tol: Tolerance | None = None, checks=None, **instance) -> VerificationReport:
    """Run the predicate suite on ``d``; ``checks`` restricts it to a subset of ids.

    Raises :class:`~gedm.exceptions.ZeroGedm` when ``D = 0``: every result
    is stated for nonzero GEDMs.
    """
    tol = matcore._tol(tol)
    if d.is_zero():
        raise ZeroGedm("nonzero-D precondition unmet")
    if checks is not None:
        unknown = set(checks) - set(CHECK_IDS)
        if unknown:
            raise KeyError(f"unknown check ids: {sorted(unknown)}")
    report = VerificationReport(describe(d, **instance), tolerance=tolerance_dict(tol))
    c = _Context(d, tol)
    for check_id, fn in CHECKS:
        if checks is None or check_id in checks:
            report.entries.append(_run(check_id, fn, c))
    report.data["circum"] = bool(c.circum)
    report.data["one_d_one"] = float(c.dag.sum())
    return report


def verify_file(dmat, a: float, b: float, tol: Tolerance | None = None, **instance) -> VerificationReport:
    """Audit a GEDM given only as a matrix with known scales.

    The Laplacian is recovered first; when recovery fails the report holds
    a single failed ``gedm.recovery`` entry.
    """
    tol = matcore._tol(tol)
    start = time.perf_counter()
    try:
        lap = edm.recover_laplacian(dmat, a, b, tol)
    except NotAGedm as exc:
        entry = CheckEntry("gedm.recovery", FAIL, None, time.perf_counter() - start,
                           f"NotAGedm: {exc.reason}")
        info = {"n": int(np.asarray(dmat).shape[0]), "a": float(a), "b": float(b)}
        info.update({k: v for k, v in instance.items() if v is not None})
        return VerificationReport(info, [entry], tolerance_dict(tol))
    d = edm.build(lap, a, b, tol)
    gap = float(np.max(np.abs(d.matrix - np.asarray(dmat, dtype=float))))
    if gap > tol.threshold(d.matrix):
        entry = CheckEntry("gedm.recovery", FAIL, gap, time.perf_counter() - start,
                           "rebuilt matrix differs from input")
        return VerificationReport(describe(d, **instance), [entry], tolerance_dict(tol))
    return verify(d, tol, **instance)
