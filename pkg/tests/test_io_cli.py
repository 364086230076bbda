import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from gedm import cli, edm, laplacian
from gedm import io as gio
from gedm import verify as vf

from conftest import D_EX1, L_EX1

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@settings(max_examples=200)
@given(arrays(np.float64, st.tuples(st.integers(1, 6), st.integers(1, 6)), elements=finite))
def test_csv_round_trip(m):
    back = gio.parse_matrix_csv(gio.format_matrix_csv(m))
    assert np.array_equal(back, m)
    # 17 significant digits are enough to identify the double
    again = np.array([[float(f"{v:.17g}") for v in row] for row in m])
    assert np.array_equal(again, back)


def test_csv_errors():
    with pytest.raises(ValueError):
        gio.parse_matrix_csv("")
    with pytest.raises(ValueError):
        gio.parse_matrix_csv("1,2\n3\n")
    with pytest.raises(ValueError):
        gio.parse_matrix_csv("1,x\n")


def test_report_round_trip(lap_ex1):
    report = vf.verify(edm.build(lap_ex1, 1, 3), preset="circum")
    text = gio.dump_json(report.to_dict())
    back = vf.VerificationReport.from_dict(json.loads(text))
    assert back.to_dict() == report.to_dict()
    assert gio.dump_json(back.to_dict()) == text
    keys = list(json.loads(text))
    assert keys == ["tool", "version", "passed", "instance", "tolerance", "entries", "data"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestGen:
    def test_writes_file(self, tmp_path, capsys):
        path = tmp_path / "L.csv"
        code, out, _ = run(capsys, "gen", "-n", "3", "--rank", "2", "--seed", "42", "-o", str(path))
        assert code == 0
        m = gio.read_matrix(path)
        assert m.shape == (3, 3)
        assert "rank 2" in out
        assert np.array_equal(m, laplacian.random_laplacian(3, 2, 42).matrix)

    def test_two_point(self, capsys):
        code, out, _ = run(capsys, "gen", "-n", "2", "--rank", "1", "--seed", "7")
        m = gio.parse_matrix_csv(out)
        assert code == 0 and m[0, 0] > 0
        assert np.allclose(m, m[0, 0] * np.array([[1, -1], [-1, 1]]))

    def test_rank_too_large(self, capsys):
        code, _, err = run(capsys, "gen", "-n", "5", "--rank", "5")
        assert code == 2 and "target_rank" in err


class TestBuild:
    def test_example(self, tmp_path, capsys):
        lpath, dpath = tmp_path / "L.csv", tmp_path / "D.csv"
        gio.write_matrix(lpath, L_EX1)
        code, out, _ = run(capsys, "build", "-L", str(lpath), "-a", "1", "-b", "3", "-o", str(dpath))
        assert code == 0 and "ok" in out
        assert np.array_equal(gio.read_matrix(dpath), D_EX1)

    def test_equal_scales(self, capsys):
        code, out, _ = run(capsys, "build", "--preset", "circum", "-a", "1", "-b", "1")
        m = gio.parse_matrix_csv(out)
        assert code == 0
        assert np.all(np.diag(m) == 0) and np.array_equal(m, m.T)

    def test_zero_scale(self, capsys):
        code, _, err = run(capsys, "build", "--preset", "circum", "-a", "0")
        assert code == 2 and "NonpositiveScale" in err

    def test_invalid_laplacian(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        gio.write_matrix(path, np.eye(2))
        code, _, err = run(capsys, "build", "-L", str(path))
        assert code == 2 and "RowSumsNonzero" in err

    def test_missing_file(self, capsys):
        code, _, _ = run(capsys, "build", "-L", "/nonexistent/L.csv")
        assert code == 3


class TestVerifyAll:
    def test_example_passes(self, tmp_path, capsys):
        rpath = tmp_path / "r.json"
        code, out, _ = run(capsys, "verify-all", "--preset", "circum", "-o", str(rpath))
        assert code == 0 and "overall: pass" in out
        report = json.loads(rpath.read_text())
        assert report["passed"] and len(report["entries"]) == len(vf.CHECKS)

    def test_corrupted_check_file(self, tmp_path, capsys):
        bad = D_EX1.copy()
        bad[0, 2] += 1.0
        path = tmp_path / "D.csv"
        gio.write_matrix(path, bad)
        code, out, _ = run(capsys, "verify-all", "--check-file", str(path), "-a", "1", "-b", "3", "--json")
        report = json.loads(out)
        assert code == 1 and not report["passed"]
        assert report["entries"][0]["id"] == "gedm.recovery"
        assert report["entries"][0]["status"] == "fail"

    def test_clean_check_file(self, tmp_path, capsys):
        path = tmp_path / "D.csv"
        gio.write_matrix(path, D_EX1)
        code, _, _ = run(capsys, "verify-all", "--check-file", str(path), "-a", "1", "-b", "3")
        assert code == 0

    def test_zero_laplacian(self, tmp_path, capsys):
        path = tmp_path / "Z.csv"
        gio.write_matrix(path, np.zeros((3, 3)))
        rpath = tmp_path / "r.json"
        code, _, err = run(capsys, "verify-all", "-L", str(path), "-o", str(rpath))
        assert code == 2 and "nonzero-D precondition unmet" in err
        report = json.loads(rpath.read_text())
        assert report["entries"] == [] and "nonzero-D precondition unmet" in report["data"]["note"]

    def test_batch(self, capsys):
        code, out, _ = run(capsys, "verify-all", "--batch", "6", "--seed", "10", "-a", "1", "-b", "3",
                           "--jobs", "2", "--json")
        summary = json.loads(out)
        assert code == 0 and summary["instances"] == 6 and summary["passed"]

    def test_env_tolerance(self, monkeypatch, capsys):
        monkeypatch.setenv("GEDM_TOL_REL", "1e-7")
        code, out, _ = run(capsys, "spectrum", "--preset", "circum", "--json")
        assert code == 0
        assert json.loads(out)["tolerance"]["rel_eps"] == 1e-7


class TestAnalysisCommands:
    def test_spectrum(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--preset", "circum")
        assert code == 0 and "(100.1322, -24.0000, -36.1322)" in out

    def test_mpower(self, capsys):
        code, out, _ = run(capsys, "mpower", "--preset", "circum", "-r", "0.5")
        assert code == 0
        for row in ("7.8037  -3.3378  -4.3690", "-3.3378   7.8037  -4.3690", "-3.6836  -3.6836   7.2073"):
            assert row in out
        assert "M-matrix: yes" in out

    def test_classify_noncircum(self, capsys):
        code, out, _ = run(capsys, "classify", "--preset", "noncircum")
        assert code == 0
        assert "non-circum, 1′D†1 = 0, rank(D) = rank(L)+2" in out

    def test_classify_json(self, capsys):
        code, out, _ = run(capsys, "classify", "--preset", "circum", "--json")
        data = json.loads(out)["data"]
        assert code == 0 and data["circum"] and data["rank_d"] == 3

    def test_pinv(self, capsys):
        code, out, _ = run(capsys, "pinv", "--preset", "noncircum")
        assert code == 0 and "1'D+1 = 0.0000" in out

    def test_majorize(self, capsys):
        code, out, _ = run(capsys, "majorize", "--preset", "circum")
        assert code == 0 and out.count("holds") == 2

    def test_infdiv(self, capsys):
        code, out, _ = run(capsys, "infdiv", "--preset", "circum", "--exponents", "0.5", "2")
        assert code == 0 and "certified: yes" in out

    def test_infdiv_rank_guard(self, capsys):
        code, _, err = run(capsys, "infdiv", "-n", "4", "--rank", "2", "-a", "1", "-b", "3")
        assert code == 2 and "RankHypothesisViolated" in err

    def test_generated_instance(self, capsys):
        code, out, _ = run(capsys, "spectrum", "-n", "5", "--rank", "3", "--seed", "4")
        assert code == 0 and "positive eigenvalues: 1" in out

    def test_usage_error(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["spectrum", "--bogus"])
        assert info.value.code == 2

    def test_no_instance(self, capsys):
        code, _, _ = run(capsys, "spectrum")
        assert code == 2
