import numpy as np
import pytest

from gedm import edm, laplacian
from gedm import verify as vf
from gedm.exceptions import ZeroGedm

from conftest import D_EX1


def statuses(report):
    return {e.id: e.status for e in report.entries}


def test_example_all_pass(lap_ex1):
    report = vf.verify(edm.build(lap_ex1, 1, 3))
    assert report.passed
    assert set(statuses(report).values()) == {"pass"}
    assert [e.id for e in report.entries] == list(vf.CHECK_IDS)
    assert report.data["circum"]


def test_noncircum_skips(lap_noncircum):
    report = vf.verify(edm.build(lap_noncircum, 1, 2))
    st = statuses(report)
    assert report.passed
    assert st["pinv.mp_formula"] == "skip"
    assert st["pinv.haynsworth"] == "skip"
    assert st["pinv.rank_formula"] == "pass"
    assert st["infdiv.certificate"] == "skip"  # rank(L) = 1 < n - 1
    assert not report.data["circum"]


def test_equal_scale_infdiv_skipped(lap_ex1):
    st = statuses(vf.verify(edm.build(lap_ex1, 1, 1)))
    assert st["infdiv.certificate"] == "skip"


def test_zero_rejected():
    with pytest.raises(ZeroGedm):
        vf.verify(edm.build(laplacian.validate(np.zeros((3, 3))), 1, 1))


def test_subset(lap_ex1):
    report = vf.verify(edm.build(lap_ex1, 1, 3), checks=["spectra.one_positive"])
    assert [e.id for e in report.entries] == ["spectra.one_positive"]
    with pytest.raises(KeyError):
        vf.verify(edm.build(lap_ex1, 1, 3), checks=["nonsense"])


def test_overall_flag_follows_entries(lap_ex1):
    report = vf.verify(edm.build(lap_ex1, 1, 3))
    report.entries[3] = vf.CheckEntry(report.entries[3].id, vf.FAIL)
    assert not report.passed
    report.entries[3] = vf.CheckEntry(report.entries[3].id, vf.ERROR)
    assert not report.passed


def test_verify_file():
    assert vf.verify_file(D_EX1, 1, 3).passed
    bad = D_EX1.copy()
    bad[2, 0] += 1.0
    report = vf.verify_file(bad, 1, 3)
    assert not report.passed
    assert report.entries[0].id == "gedm.recovery" and report.entries[0].status == "fail"


def test_wrong_scales_detected():
    # D from (1, 3) read as if it came from (1, 2)
    assert not vf.verify_file(D_EX1, 1, 2).passed


def test_grid_covers_all_pairs():
    pairs = {vf.grid_instance(k) for k in range(200)}
    assert pairs == {(n, r) for n in range(2, 11) for r in range(1, n)}
