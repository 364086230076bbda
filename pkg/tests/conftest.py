import numpy as np
import pytest
from hypothesis import settings

from gedm import laplacian

settings.register_profile("default", derandomize=True, deadline=None)
settings.load_profile("default")

L_EX1 = np.array([[3.0, -1.0, -2.0], [-1.0, 3.0, -2.0], [-2.0, -2.0, 4.0]])
D_EX1 = np.array([[12.0, 36.0, 51.0], [36.0, 12.0, 51.0], [43.0, 43.0, 16.0]])
L_NONCIRCUM = np.array([[1.0, -1.0, 0.0], [-1.0, 1.0, 0.0], [0.0, 0.0, 0.0]])
D_NONCIRCUM = np.array([[1.0, 9.0, 1.0], [9.0, 1.0, 1.0], [4.0, 4.0, 0.0]])

SCALES = [(1.0, 1.0), (1.0, 3.0), (2.0, 5.0), (0.5, 0.5), (1.0, 1.0001)]


@pytest.fixture
def lap_ex1():
    return laplacian.validate(L_EX1)


@pytest.fixture
def lap_noncircum():
    return laplacian.validate(L_NONCIRCUM)


# acceptance criteria append (criterion id, passed, detail) here
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, passed, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {cid}: {detail}")
