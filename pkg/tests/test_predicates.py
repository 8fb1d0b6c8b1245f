import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphertrans import predicates
from sphertrans.ensembles import random_normal_tuple, random_tuple
from sphertrans.errors import NotCommutingError
from sphertrans.tuples import tuple_from, zero_tuple

from conftest import cmat, random_matrix


class TestSingleOperatorPredicates:
    def test_lower_shift_two_by_two(self):
        a = cmat([[0, 0], [1, 0]])
        # [A, A*A] = A, so the quasinormality residual is ||A|| = 1
        quasi = predicates.is_quasinormal_single(a)
        assert not quasi.flag
        assert quasi.residual == pytest.approx(1.0)
        hypo = predicates.is_hyponormal_single(a)
        assert not hypo.flag
        assert hypo.residual == pytest.approx(1.0)
        gap = np.conj(a.T) @ a - a @ np.conj(a.T)
        assert np.allclose(gap, np.diag([1.0, -1.0]))

    def test_upper_shift_not_hyponormal(self):
        a = cmat([[0, 1], [0, 0]])
        gap = np.conj(a.T) @ a - a @ np.conj(a.T)
        assert np.allclose(gap, np.diag([-1.0, 1.0]))
        assert not predicates.is_hyponormal_single(a).flag

    def test_hermitian_is_everything(self):
        rng = np.random.default_rng(3)
        a = random_matrix(rng, 4)
        a = (a + np.conj(a.T)) / 2
        assert predicates.is_normal_single(a).flag
        assert predicates.is_quasinormal_single(a).flag
        assert predicates.is_hyponormal_single(a).flag

    def test_matrix_hyponormal_iff_normal(self):
        # finite-dimensional collapse: the commutator defect has zero trace,
        # so PSD forces it to vanish
        rng = np.random.default_rng(11)
        for k in range(40):
            n = 2 + k % 5
            a = random_matrix(rng, n)
            hypo = predicates.is_hyponormal_single(a)
            normal = predicates.is_normal_single(a)
            if hypo.flag:
                assert normal.residual <= normal.tol


class TestTuplePredicates:
    def test_commuting_and_normal(self, diag_pair):
        assert predicates.is_commuting(diag_pair).flag
        assert predicates.is_normal_tuple(diag_pair).flag

    def test_column_pair_not_commuting(self, sharp_column):
        assert not predicates.is_commuting(sharp_column).flag

    def test_jointly_hyponormal_block_matrix(self, sharp_column):
        # brute-force 4x4 eigenvalue oracle for the block commutator matrix
        t1, t2 = sharp_column[0], sharp_column[1]
        blocks = np.zeros((4, 4), dtype=complex)
        for i, ti in enumerate((t1, t2)):
            for j, tj in enumerate((t1, t2)):
                com = np.conj(tj.T) @ ti - ti @ np.conj(tj.T)
                blocks[2 * i:2 * i + 2, 2 * j:2 * j + 2] = com
        low = float(np.linalg.eigvalsh(blocks)[0])
        res = predicates.is_jointly_hyponormal(sharp_column)
        assert res.residual == pytest.approx(max(0.0, -low), abs=1e-12)
        assert res.flag == (low >= -res.tol)
        # this pair is genuinely not jointly hyponormal
        assert low == pytest.approx((-1.0 - np.sqrt(5.0)) / 2.0, abs=1e-12)
        assert not res.flag

    def test_normal_tuple_is_jointly_hyponormal(self):
        t = random_normal_tuple(3, 4, 7)
        assert predicates.is_jointly_hyponormal(t).flag

    def test_zero_tuple_everything(self):
        z = zero_tuple(2, 2)
        assert predicates.is_jointly_hyponormal(z).flag
        assert predicates.is_spherically_quasinormal(z, "A").flag
        assert predicates.is_square_zero(z).flag


class TestSphericalQuasinormality:
    def test_column_pair_route_a_residual(self, sharp_column):
        # gram sum is diag(2, 0); [T2, diag(2,0)] has norm 2
        res = predicates.is_spherically_quasinormal(sharp_column, "A")
        assert res.residual == pytest.approx(2.0, abs=1e-12)
        assert not res.flag

    def test_route_b_requires_commuting(self, sharp_column):
        with pytest.raises(NotCommutingError):
            predicates.is_spherically_quasinormal(sharp_column, "B")

    @settings(max_examples=15, deadline=None)
    @given(seed=st.integers(0, 10**6), d=st.integers(1, 3), n=st.integers(2, 5))
    def test_routes_agree_on_commuting_tuples(self, seed, d, n):
        t = random_normal_tuple(d, n, seed)
        a = predicates.is_spherically_quasinormal(t, "A")
        b = predicates.is_spherically_quasinormal(t, "B")
        assert a.flag and b.flag

    def test_routes_agree_negative_case(self):
        # commuting but not spherically quasinormal
        base = cmat([[0, 1], [0, 0]])
        t = tuple_from(base, base @ base + 2 * base)
        assert predicates.is_commuting(t).flag
        a = predicates.is_spherically_quasinormal(t, "A")
        b = predicates.is_spherically_quasinormal(t, "B")
        assert not a.flag and not b.flag

    def test_unknown_route(self, diag_pair):
        with pytest.raises(ValueError):
            predicates.is_spherically_quasinormal(diag_pair, "C")


class TestImplicationChain:
    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 10**6), d=st.integers(1, 4), n=st.integers(2, 5))
    def test_normal_implies_spherically_quasinormal_implies_jointly_hyponormal(
        self, seed, d, n
    ):
        t = random_normal_tuple(d, n, seed)
        assert predicates.is_normal_tuple(t).flag
        assert predicates.is_spherically_quasinormal(t, "A").flag
        assert predicates.is_jointly_hyponormal(t).flag


class TestSquareZeroAndProxy:
    def test_square_zero_flags(self):
        nil = random_tuple(3, 2, 5, "nilpotent")
        assert predicates.is_square_zero(nil).flag
        gen = random_tuple(3, 3, 5, "ginibre")
        assert not predicates.is_square_zero(gen).flag

    def test_proxy_invertible_defect(self, diag_pair):
        proxy = predicates.taylor_invertibility_proxy(diag_pair)
        assert proxy.flag
        assert proxy.min_defect_eigenvalue == pytest.approx(1.0)
        assert proxy.note == "necessary condition only"

    def test_proxy_singular_defect(self, sharp_column):
        assert not predicates.taylor_invertibility_proxy(sharp_column).flag

    def test_proxy_zero_tuple(self):
        assert not predicates.taylor_invertibility_proxy(zero_tuple(2, 2)).flag


class TestClassification:
    def test_classify_aggregates(self, diag_pair):
        c = predicates.classify(diag_pair)
        assert c.commuting.flag
        assert c.normal.flag
        assert c.spherically_quasinormal.flag
        assert c.spherically_quasinormal_block is not None
        assert c.spherically_quasinormal_block.flag
        assert c.jointly_hyponormal.flag
        assert not c.square_zero.flag
        assert c.taylor_proxy.flag
        assert len(c.coordinate_normal) == 2

    def test_classify_noncommuting_skips_block_route(self, sharp_column):
        c = predicates.classify(sharp_column)
        assert not c.commuting.flag
        assert c.spherically_quasinormal_block is None
