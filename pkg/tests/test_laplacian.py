import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gedm import laplacian
from gedm.exceptions import NegativeWeight, NonzeroDiagonal, NotPsd, NotSymmetric, RowSumsNonzero
from gedm.rng import SplitMix64

from conftest import L_EX1


class TestSplitMix64:
    def test_reference_output(self):
        # published first outputs of splitmix64 for seed 0
        g = SplitMix64(0)
        assert g.next_u64() == 0xE220A8397B1DCDAF
        assert g.next_u64() == 0x6E789E6AA1B965F4

    def test_unit_interval(self):
        g = SplitMix64(11)
        u = [g.random() for _ in range(1000)]
        assert min(u) >= 0.0 and max(u) < 1.0

    def test_row_major_fill(self):
        a = SplitMix64(5).uniform(-1, 1, (2, 3))
        g = SplitMix64(5)
        b = [g.uniform(-1, 1) for _ in range(6)]
        assert np.array_equal(a.ravel(), b)

    def test_seed_range(self):
        with pytest.raises(ValueError):
            SplitMix64(-1)


class TestValidate:
    def test_example_accepted(self, lap_ex1):
        assert lap_ex1.trace == 10
        assert np.allclose(lap_ex1.alphas, [0, 4, 6])
        assert lap_ex1.rank() == 2

    def test_row_sums(self):
        with pytest.raises(RowSumsNonzero):
            laplacian.validate([[1, 0], [0, 1]])

    def test_not_psd(self):
        with pytest.raises(NotPsd) as info:
            laplacian.validate([[0, 4], [4, 0]])
        err = info.value
        assert err.min_eigenvalue == pytest.approx(-4)

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetric):
            laplacian.validate([[1, -1], [-2, 2]])


class TestBuilders:
    def test_from_psd_identity(self):
        assert np.allclose(laplacian.from_psd(np.eye(2)).matrix, [[0.5, -0.5], [-0.5, 0.5]])

    def test_from_psd_zero_and_ones(self):
        assert np.allclose(laplacian.from_psd(np.zeros((3, 3))).matrix, 0)
        assert np.allclose(laplacian.from_psd(np.ones((3, 3))).matrix, 0, atol=1e-15)

    def test_from_psd_rejects_indefinite(self):
        with pytest.raises(NotPsd):
            laplacian.from_psd([[0, 4], [4, 0]])

    def test_from_graph(self):
        assert np.array_equal(laplacian.from_graph([[0, 1], [1, 0]]).matrix, [[1, -1], [-1, 1]])
        assert np.array_equal(laplacian.from_graph([[0, 1, 2], [1, 0, 2], [2, 2, 0]]).matrix, L_EX1)
        assert np.array_equal(laplacian.from_graph(np.zeros((3, 3))).matrix, np.zeros((3, 3)))

    def test_from_graph_errors(self):
        with pytest.raises(NegativeWeight):
            laplacian.from_graph([[0, -1], [-1, 0]])
        with pytest.raises(NonzeroDiagonal):
            laplacian.from_graph([[1, 1], [1, 0]])

    def test_random_small(self):
        lap = laplacian.random_laplacian(2, 1, 7)
        m = lap.matrix
        assert m[0, 0] > 0
        assert np.allclose(m, m[0, 0] * np.array([[1, -1], [-1, 1]]))

    def test_random_rank4(self):
        lap = laplacian.random_laplacian(5, 4, 1)
        assert lap.rank() == 4
        laplacian.validate(lap.matrix)

    def test_random_zero_rank(self):
        assert np.array_equal(laplacian.random_laplacian(3, 0, 0).matrix, np.zeros((3, 3)))

    def test_random_rank_bounds(self):
        with pytest.raises(ValueError):
            laplacian.random_laplacian(5, 5, 0)
        with pytest.raises(ValueError):
            laplacian.random_laplacian(5, -1, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 10), st.data(), st.integers(0, 2**64 - 1))
def test_generated_invariants(n, data, seed):
    rank = data.draw(st.integers(0, n - 1))
    lap = laplacian.random_laplacian(n, rank, seed)
    m = lap.matrix
    assert lap.rank() == rank
    assert np.max(np.abs(m.sum(axis=1))) <= 1e-12
    assert abs(lap.alphas[0]) <= 1e-12
    assert lap.trace == pytest.approx(np.trace(m))
    # 1 spans part of the null space
    assert np.max(np.abs(m @ np.ones(n))) <= 1e-12
    # idempotence of the projection construction
    assert np.allclose(laplacian.from_psd(m).matrix, m, atol=1e-13)
    # bit reproducibility
    assert np.array_equal(laplacian.random_laplacian(n, rank, seed).matrix, m)
