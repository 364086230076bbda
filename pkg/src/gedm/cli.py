"""Command-line interface.

Exit codes: 0 success, 1 a checked predicate failed, 2 bad usage or an
unmet precondition, 3 an I/O problem.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__, edm, infdiv, laplacian, majorize, matcore, moore_penrose as mp, mpower, spectra
from . import io as gio
from . import verify as vf
from .exceptions import GedmError, ZeroGedm

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

PRESETS = {
    "circum": ([[3.0, -1.0, -2.0], [-1.0, 3.0, -2.0], [-2.0, -2.0, 4.0]], 1.0, 3.0),
    "noncircum": ([[1.0, -1.0, 0.0], [-1.0, 1.0, 0.0], [0.0, 0.0, 0.0]], 1.0, 2.0),
}

COMMAND_CHECKS = {
    "spectrum": ("spectra.one_positive", "spectra.bordered_one_positive", "spectra.diagonalization"),
    "pinv": ("pinv.penrose", "pinv.null_in_ones_perp", "pinv.ones_in_col", "pinv.one_d_one_nonneg",
             "pinv.ginverse_invariance", "pinv.neg_pdp_psd", "pinv.mp_formula",
             "pinv.null_equalities"),
    "classify": ("pinv.rank_formula", "pinv.e_equivalence", "pinv.haynsworth"),
    "majorize": ("majorize.diag_vs_spectrum", "majorize.spectrum_vs_symmetric_part",
                 "majorize.spectral_radius"),
    "infdiv": ("infdiv.certificate",),
}


class IOFailure(Exception):
    pass


def _read(path) -> np.ndarray:
    try:
        return gio.read_matrix(path)
    except (OSError, ValueError) as exc:
        raise IOFailure(f"cannot read {path}: {exc}") from None


def _write_matrix(path, m):
    try:
        gio.write_matrix(path, m)
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc}") from None


def _write_json(path, obj):
    try:
        gio.write_json(path, obj)
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc}") from None


def _fmt(x: float) -> str:
    s = f"{x:.4f}"
    return "0.0000" if s == "-0.0000" else s


def format_table(m) -> str:
    m = np.atleast_2d(np.asarray(m, dtype=float))
    cells = [[_fmt(v) for v in row] for row in m]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


def format_vector(v) -> str:
    return "(" + ", ".join(_fmt(x) for x in np.asarray(v, dtype=float)) + ")"


# -- instance arguments ------------------------------------------------------------

def _add_instance_args(p: argparse.ArgumentParser):
    g = p.add_argument_group("instance")
    src = g.add_mutually_exclusive_group()
    src.add_argument("--laplacian", "-L", metavar="PATH", help="generalized Laplacian as CSV")
    src.add_argument("--preset", choices=sorted(PRESETS), help="built-in instance")
    g.add_argument("-n", type=int, help="size of a generated Laplacian")
    g.add_argument("--rank", type=int, help="rank of a generated Laplacian")
    g.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    g.add_argument("-a", type=float, default=None, help="row scale a (default 1, or the preset's)")
    g.add_argument("-b", type=float, default=None, help="column scale b (default 1, or the preset's)")


def _scales(args, default=(1.0, 1.0)):
    a = args.a if args.a is not None else default[0]
    b = args.b if args.b is not None else default[1]
    return a, b


def _instance(args, tol):
    """Resolve instance arguments into ``(Gedm, descriptor)``."""
    if args.preset:
        lmat, a0, b0 = PRESETS[args.preset]
        a, b = _scales(args, (a0, b0))
        lap = laplacian.validate(lmat, tol)
        info = {"preset": args.preset}
    elif args.laplacian:
        a, b = _scales(args)
        lap = laplacian.validate(_read(args.laplacian), tol)
        info = {"path": args.laplacian}
    elif args.n is not None:
        a, b = _scales(args)
        rank = args.rank if args.rank is not None else args.n - 1
        lap = laplacian.random_laplacian(args.n, rank, args.seed, tol)
        info = {"seed": args.seed, "rank": rank}
    else:
        raise ValueError("give --laplacian, --preset or -n/--rank/--seed")
    return edm.build(lap, a, b, tol), info


def _emit_report(args, report, text):
    if getattr(args, "json", False):
        _write_json("-", report.to_dict())
    else:
        print(text)
    path = getattr(args, "report", None)
    if path:
        _write_json(path, report.to_dict())
    return EXIT_OK if report.passed else EXIT_FAIL


def _subreport(name, d, tol, info):
    return vf.verify(d, tol, checks=COMMAND_CHECKS[name], **info)


# -- commands ------------------------------------------------------------------------

def cmd_gen(args, tol):
    if args.n is None or args.rank is None:
        raise ValueError("gen needs -n and --rank")
    lap = laplacian.random_laplacian(args.n, args.rank, args.seed, tol)
    _write_matrix(args.output, lap.matrix)
    msg = f"rank {lap.rank(tol)}, trace {lap.trace!r}"
    print(msg, file=sys.stderr if args.output in (None, "-") else sys.stdout)
    return EXIT_OK


def cmd_build(args, tol):
    d, _ = _instance(args, tol)
    _write_matrix(args.output, d.matrix)
    expected = (d.a - d.b) ** 2 * np.diag(d.laplacian.matrix)
    gap = float(np.max(np.abs(np.diag(d.matrix) - expected)))
    ok = gap <= tol.threshold(d.matrix)
    msg = f"diagonal identity d_ii = (a-b)^2 l_ii: {'ok' if ok else 'FAILED'} (max deviation {gap:.3e})"
    print(msg, file=sys.stderr if args.output in (None, "-") else sys.stdout)
    return EXIT_OK if ok else EXIT_FAIL


def _batch_one(job):
    k, n, rank, seed, a, b, rel_eps = job
    tol = matcore.Tolerance(rel_eps=rel_eps)
    if n is None:
        n, rank = vf.grid_instance(k)
    elif rank is None:
        rank = n - 1
    lap = laplacian.random_laplacian(n, rank, seed, tol)
    d = edm.build(lap, a, b, tol)
    if d.is_zero():
        return {"instance": {"n": n, "rank": rank, "seed": seed}, "skipped": "nonzero-D precondition unmet"}
    return vf.verify(d, tol, seed=seed, rank=rank).to_dict()


def cmd_verify_all(args, tol):
    if args.batch:
        a, b = _scales(args)
        jobs = [(k, args.n, args.rank, args.seed + k, a, b, tol.rel_eps) for k in range(args.batch)]
        workers = args.jobs or os.cpu_count() or 1
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_batch_one, jobs))
        else:
            results = [_batch_one(j) for j in jobs]
        failed = [r for r in results if not r.get("passed", True)]
        summary = {"tool": "gedm", "version": __version__, "passed": not failed,
                   "instances": len(results), "failed": len(failed), "reports": results}
        if args.json:
            _write_json("-", summary)
        else:
            for r in results:
                inst = r["instance"]
                state = "skip" if "skipped" in r else ("pass" if r["passed"] else "FAIL")
                bad = [e["id"] for e in r.get("entries", []) if e["status"] in ("fail", "error")]
                print(f"seed {inst['seed']:>6}  n={inst['n']:<3} rank={inst['rank']:<3} {state}"
                      + (f"  [{', '.join(bad)}]" if bad else ""))
            print(f"{len(results) - len(failed)}/{len(results)} instances passed")
        if args.report:
            _write_json(args.report, summary)
        return EXIT_OK if not failed else EXIT_FAIL

    if args.check_file:
        a, b = _scales(args)
        report = vf.verify_file(_read(args.check_file), a, b, tol, path=args.check_file)
    else:
        d, info = _instance(args, tol)
        if d.is_zero():
            note = vf.VerificationReport(vf.describe(d, **info), tolerance=vf.tolerance_dict(tol))
            note.data["note"] = "nonzero-D precondition unmet; suite skipped"
            if args.json:
                _write_json("-", note.to_dict())
            if args.report:
                _write_json(args.report, note.to_dict())
            raise ZeroGedm(note.data["note"])
        report = vf.verify(d, tol, **info)
    lines = []
    for e in report.entries:
        res = "" if e.residual is None else f"{e.residual:.3e}"
        lines.append(f"{e.id:<38} {e.status:<5} {res:>10}" + (f"  {e.detail}" if e.detail and e.status != "pass" else ""))
    lines.append("overall: " + ("pass" if report.passed else "FAIL"))
    return _emit_report(args, report, "\n".join(lines))


def cmd_spectrum(args, tol):
    d, info = _instance(args, tol)
    spec = spectra.spectrum(d, tol=tol)
    text = (f"eigenvalues: {format_vector(spec.values)}\n"
            f"positive eigenvalues: {spec.positive_count}")
    report = _subreport("spectrum", d, tol, info)
    report.data["eigenvalues"] = [float(v) for v in spec.values]
    return _emit_report(args, report, text)


def cmd_pinv(args, tol):
    d, info = _instance(args, tol)
    dag = mp.dagger(d, tol)
    text = (f"D+ =\n{format_table(dag)}\n"
            f"1'D+1 = {_fmt(dag.sum())}\n"
            f"rank(D) = {d.n - mp.null_space(d, tol).shape[1]}")
    report = _subreport("pinv", d, tol, info)
    report.data["pinv"] = dag.tolist()
    return _emit_report(args, report, text)


def cmd_classify(args, tol):
    d, info = _instance(args, tol)
    dag = mp.dagger(d, tol)
    circum = mp.classify_circum(d, tol, dag)
    value = mp.one_d_one(d, tol, dag)
    rank_l = d.laplacian.rank(tol)
    rank_d = d.n - mp.null_space(d, tol).shape[1]
    label = "circum" if circum else "non-circum"
    shown = _fmt(value) if circum else "0"
    step = 1 if circum else 2
    text = f"{label}, 1′D†1 = {shown}, rank(D) = rank(L)+{step} = {rank_l + step}"
    if rank_d != rank_l + step:
        text += f" predicted; observed rank(D) = {rank_d}, rank(L) = {rank_l}"
    if mp.circum_ambiguous(d, tol, dag):
        text += " (ambiguous: 1′D†1 is within a decade of the tolerance)"
    report = _subreport("classify", d, tol, info)
    report.data.update({"circum": bool(circum), "one_d_one": float(value),
                        "rank_d": int(rank_d), "rank_l": int(rank_l)})
    return _emit_report(args, report, text)


def cmd_mpower(args, tol):
    d, info = _instance(args, tol)
    sm = mpower.shift(d, tol)
    out = mpower.frac_power(sm, args.r)
    is_m = mpower.is_m_matrix(out, tol)
    text = (f"S^{args.r:g} =\n{format_table(out)}\n"
            f"M-matrix: {'yes' if is_m else 'no'}")
    report = vf.VerificationReport(vf.describe(d, **info), tolerance=vf.tolerance_dict(tol))
    report.entries.append(vf.CheckEntry("mpower.m_matrix", vf.PASS if is_m else vf.FAIL,
                                        detail=f"r = {args.r:g}"))
    report.data.update({"r": args.r, "power": out.tolist(), "m_matrix": bool(is_m)})
    return _emit_report(args, report, text)


def _major_line(name, rep):
    state = "holds" if rep.holds else f"fails at prefix {rep.prefix_index}"
    return f"{name}: {state} (worst prefix gap {rep.worst_prefix_gap:.3e})"


def cmd_majorize(args, tol):
    d, info = _instance(args, tol)
    r1 = majorize.diag_vs_spectrum(d, tol)
    r2 = majorize.spectrum_vs_symmetric_part(d, tol)
    rho_d, rho_s, ok = majorize.spectral_radius_bound(d, tol)
    text = "\n".join([
        _major_line("diag(D) majorized by spectrum of D", r1),
        _major_line("spectrum of D majorized by spectrum of (D+D')/2", r2),
        f"spectral radius: {_fmt(rho_d)} <= {_fmt(rho_s)}: {'yes' if ok else 'no'}",
    ])
    report = _subreport("majorize", d, tol, info)
    return _emit_report(args, report, text)


def cmd_infdiv(args, tol):
    d, info = _instance(args, tol)
    cert = infdiv.certify(d, args.exponents, tol)
    lines = [f"{'r':>6}  {'min eigenvalue':>16}  {'threshold':>10}"]
    for r, m, t in zip(cert.tested_exponents, cert.min_eigenvalue_per_exponent, cert.thresholds):
        lines.append(f"{r:>6g}  {m:>16.4e}  {t:>10.2e}")
    lines.append(f"certified: {'yes' if cert.certified else 'no'}")
    report = vf.VerificationReport(vf.describe(d, **info), tolerance=vf.tolerance_dict(tol))
    report.entries.append(vf.CheckEntry("infdiv.certificate", vf.PASS if cert.certified else vf.FAIL,
                                        float(np.min(cert.min_eigenvalue_per_exponent))))
    report.data.update({"exponents": list(cert.tested_exponents),
                        "min_eigenvalues": [float(v) for v in cert.min_eigenvalue_per_exponent]})
    return _emit_report(args, report, "\n".join(lines))


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gedm", description="Generalized Euclidean distance matrices.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random generalized Laplacian")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None, help="output CSV (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("build", help="build D from a Laplacian")
    _add_instance_args(p)
    p.add_argument("-o", "--output", default=None, help="output CSV (default stdout)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify-all", help="run every predicate on an instance")
    _add_instance_args(p)
    p.add_argument("--check-file", metavar="PATH", help="audit a D matrix read from CSV (needs -a, -b)")
    p.add_argument("--batch", type=int, default=0, metavar="K", help="audit K generated instances")
    p.add_argument("--jobs", type=int, default=None, help="worker processes for --batch")
    p.add_argument("--json", action="store_true", help="print the JSON report")
    p.add_argument("-o", "--report", metavar="PATH", help="also write the JSON report here")
    p.set_defaults(func=cmd_verify_all)

    for name, func, help_ in (
        ("spectrum", cmd_spectrum, "eigenvalues of D"),
        ("pinv", cmd_pinv, "Moore-Penrose inverse of D"),
        ("classify", cmd_classify, "circum classification and rank"),
        ("mpower", cmd_mpower, "real power of the shifted matrix"),
        ("majorize", cmd_majorize, "majorization reports"),
        ("infdiv", cmd_infdiv, "infinite divisibility certificate"),
    ):
        p = sub.add_parser(name, help=help_)
        _add_instance_args(p)
        p.add_argument("--json", action="store_true", help="print the JSON report")
        p.add_argument("-o", "--report", metavar="PATH", help="also write the JSON report here")
        if name == "mpower":
            p.add_argument("-r", type=float, default=0.5, help="exponent (default 0.5)")
        if name == "infdiv":
            p.add_argument("--exponents", type=float, nargs="+", default=list(infdiv.DEFAULT_EXPONENTS))
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = matcore.Tolerance.from_env()
    except ValueError as exc:
        print(f"gedm: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, tol)
    except IOFailure as exc:
        print(f"gedm: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GedmError, ValueError) as exc:
        print(f"gedm: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
