from fractions import Fraction

import numpy as np
import pytest

from gedm import oracles
from gedm.exceptions import ComplexRootsDetected

from conftest import D_EX1, D_NONCIRCUM, L_EX1


class TestEig:
    def test_examples(self):
        assert np.allclose(oracles.oracle_eig_small([[0, 4], [4, 0]]), [4, -4])
        assert np.allclose(oracles.oracle_eig_small(D_EX1), [100.1322, -24, -36.1322], atol=1e-3)
        assert np.allclose(oracles.oracle_eig_small([[4, 16], [16, 4]]), [20, -12])

    def test_cross_check_trace_det(self):
        v = oracles.oracle_eig_small(D_EX1)
        assert v.sum() == pytest.approx(40)
        assert np.prod(v) == pytest.approx(float(oracles.oracle_det_small(D_EX1)))

    def test_repeated_roots(self):
        assert np.allclose(oracles.oracle_eig_small(np.eye(3)), [1, 1, 1])
        assert np.allclose(oracles.oracle_eig_small(L_EX1), [6, 4, 0], atol=1e-10)

    def test_complex_roots(self):
        with pytest.raises(ComplexRootsDetected):
            oracles.oracle_eig_small([[0, -1], [1, 0]])

    def test_size_limit(self):
        with pytest.raises(ValueError):
            oracles.oracle_eig_small(np.eye(5))

    def test_self_check_residual(self):
        res = oracles.eig_result(D_EX1)
        assert res.max_residual <= 1e-10


class TestExact:
    def test_det(self):
        assert oracles.oracle_det_small(D_NONCIRCUM) == 64
        assert oracles.oracle_det_small([[0, 4, 1], [4, 0, 1], [1, 1, 0]]) == 8

    def test_char_poly(self):
        # x^2 - 8x - 240 for [[4,16],[16,4]], monic, highest degree last or first
        coeffs = [Fraction(c) for c in oracles.char_poly([[4, 16], [16, 4]])]
        assert sorted(coeffs) == sorted([Fraction(1), Fraction(-8), Fraction(-240)])

    def test_rank(self):
        assert oracles.oracle_rank_small(L_EX1) == 2
        assert oracles.oracle_rank_small(np.zeros((3, 3))) == 0
        assert oracles.oracle_rank_small(D_NONCIRCUM) == 3

    def test_pinv(self):
        assert np.allclose(oracles.oracle_pinv_small([[0, 4], [4, 0]]), [[0, 0.25], [0.25, 0]])
        assert np.allclose(oracles.oracle_pinv_small([[1, -1], [-1, 1]]), [[0.25, -0.25], [-0.25, 0.25]])
        exact = oracles.oracle_pinv_exact(D_NONCIRCUM)
        a = [[Fraction(float(v)) for v in row] for row in D_NONCIRCUM]
        prod = [[sum(a[i][k] * exact[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
        assert prod == [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]

    def test_pinv_rank_deficient_penrose(self):
        m = np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [1.0, 0.0, 1.0]])
        x = oracles.oracle_pinv_small(m)
        assert np.allclose(m @ x @ m, m)
        assert np.allclose(x @ m @ x, x)
        assert np.allclose((m @ x).T, m @ x)
        assert np.allclose((x @ m).T, x @ m)


class TestMajorize:
    def test_examples(self):
        assert oracles.oracle_majorize((16, 12, 12), (100.1322, -24, -36.1322), tol=1e-3)
        assert oracles.oracle_majorize((1, 1), (2, 0))
        assert not oracles.oracle_majorize((2, 0), (1, 1))
