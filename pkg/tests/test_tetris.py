from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )
import math
import unittest
from fractions import Fraction

import numpy as np

from spherex import config
from spherex.poly import SymMatRep
from spherex.tetris import (
    TemplateHypergraph,
    TetrisTerm,
    LEFT,
    RIGHT,
    kron,
    hypergraphical_matrix,
    permutation_sum,
    kron_power,
    sym_kron_power,
    multiplicity,
    tetris_terms,
    tetris_rhs,
    verify_tetris,
    random_tensor_matrix,
    single_point_moment,
    mixture_moment,
    lift_budget,
    lift_schatten_check,
    lift_psd_check,
    )
from spherex.exceptions import CapacityError, DegreeError, SymmetryError
import common

class TestTemplates(unittest.TestCase):

    def test_single(self):
        H = TemplateHypergraph.single(3, 1)
        assert (H.left_size, H.right_size) == (3, 1)
        assert H.edges == [((LEFT, 0), (LEFT, 1), (LEFT, 2), (RIGHT, 0))]
        with self.assertRaises(DegreeError):
            TemplateHypergraph.single(5, 0)

    def test_validation(self):
        with self.assertRaises(ValueError):
            TemplateHypergraph(2, 2, [[(LEFT, 0), (LEFT, 0), (RIGHT, 0), (RIGHT, 1)]])
        with self.assertRaises(ValueError):
            TemplateHypergraph(2, 2, [[(LEFT, 0), (LEFT, 2), (RIGHT, 0), (RIGHT, 1)]])

    def test_union_and_permute(self):
        H = TemplateHypergraph.single(3, 1) | TemplateHypergraph.single(1, 3)
        assert (H.left_size, H.right_size) == (4, 4)
        assert H.edges[1] == ((LEFT, 3), (RIGHT, 1), (RIGHT, 2), (RIGHT, 3))
        P = H.permuted([3, 2, 1, 0], [0, 1, 2, 3])
        assert P.edges[1][0] == (LEFT, 0)
        with self.assertRaises(ValueError):
            H.permuted([0, 0, 1, 2], [0, 1, 2, 3])

    def test_hypergraphical_h22(self):
        M = random_tensor_matrix(2, seed=1, mode='float')
        X = hypergraphical_matrix(M, TemplateHypergraph.single(2, 2))
        assert np.allclose(X, M.entries)

    def test_hypergraphical_capacity(self):
        M = random_tensor_matrix(3, seed=1, mode='float')
        with config.override(config.Capacity(entries=50)):
            with self.assertRaises(CapacityError):
                hypergraphical_matrix(M, TemplateHypergraph.single(2, 2))

class TestTerms(unittest.TestCase):

    def test_term_lists(self):
        assert tetris_terms(4) == [TetrisTerm(0, 0, 1, 0)]
        assert tetris_terms(8) == [TetrisTerm(0, 1, 0, 0), TetrisTerm(0, 0, 0, 1),
                                   TetrisTerm(0, 0, 2, 0)]
        terms = tetris_terms(12)
        assert terms == [TetrisTerm(1, 0, 0, 0), TetrisTerm(1, 0, 0, 0, transposed=True),
                         TetrisTerm(0, 1, 1, 0), TetrisTerm(0, 0, 1, 1), TetrisTerm(0, 0, 3, 0)]
        for term in terms:
            assert term.q == 12

    def test_bad_q(self):
        for q in (0, 2, 6, 10):
            with self.assertRaises(DegreeError):
                tetris_terms(q)
        with self.assertRaises(ValueError):
            TetrisTerm(0, 1, 0, 0, transposed=True)

    def test_multiplicity(self):
        assert multiplicity(0, 0, 1, 0) == 4
        assert multiplicity(0, 0, 2, 0) == 32
        assert multiplicity(0, 0, 2, 0, convention='squared') == 64
        assert multiplicity(0, 1, 0, 0) == 36
        assert multiplicity(0, 0, 0, 1) == 576
        assert multiplicity(1, 0, 0, 0) == 1728
        assert TetrisTerm(0, 0, 1, 0).weight() == Fraction(1, 4)
        with self.assertRaises(ValueError):
            multiplicity(0, 0, 1, 0, convention='other')

    def test_templates_have_q_vertices(self):
        for term in tetris_terms(12):
            H = term.template()
            assert H.left_size == 6 and H.right_size == 6
            assert len(H.edges) == 3

class TestIdentity(unittest.TestCase):

    def test_q4_exact(self):
        M = random_tensor_matrix(2, seed=3)
        report = verify_tetris(M, 4)
        assert report['pass']
        assert report['max_abs_error'] == 0.0
        assert report['terms'] == [[0, 0, 1, 0, False]]

    def test_q8_exact(self):
        M = random_tensor_matrix(2, seed=4)
        report = verify_tetris(M, 8, mode='exact')
        assert report['pass']
        assert report['max_abs_error'] == 0.0

    def test_q8_float(self):
        M = random_tensor_matrix(3, seed=5, mode='float')
        report = verify_tetris(M, 8, mode='float')
        assert report['pass']
        assert report['relative_error'] <= 1e-9

    def test_single_variable(self):
        report = verify_tetris(random_tensor_matrix(1, seed=2), 8)
        assert report['pass']

    def test_rhs_shape(self):
        M = random_tensor_matrix(2, seed=6, mode='float')
        rhs = tetris_rhs(M, 8)
        assert rhs.shape == (16, 16)
        assert rhs.is_sos_symmetric(tol=1e-9)

    def test_rejects(self):
        with self.assertRaises(SymmetryError):
            verify_tetris(common.random_symmetric(4, 2), 4, mode='float')
        with self.assertRaises(ValueError):
            verify_tetris(random_tensor_matrix(2), 4, mode='approximate')
        with self.assertRaises(DegreeError):
            verify_tetris(random_tensor_matrix(2), 6)

    def test_permutation_sum(self):
        # 24 M is an integer matrix, so both sides are exact in float
        M = random_tensor_matrix(2, seed=7, mode='float')
        B = kron_power(M.entries * 24.0, 2)
        total = permutation_sum(B, 2, 8) / math.factorial(8)
        lifted = sym_kron_power(SymMatRep(2, 2, M.entries * 24.0, check=False), 8)
        assert np.allclose(total, lifted.entries)

    def test_kron_exact(self):
        a = np.array([[Fraction(1, 2), 1], [0, 2]], dtype=object)
        b = np.array([[1, Fraction(1, 3)]], dtype=object)
        out = kron(a, b)
        assert out.shape == (2, 4)
        assert out[0, 1] == Fraction(1, 6)
        assert np.allclose(kron(np.eye(2), np.ones((2, 2))), np.kron(np.eye(2), np.ones((2, 2))))

class TestLift(unittest.TestCase):

    def test_budget(self):
        # the identity at n = 1 makes the budget exactly 1
        for q in (4, 8, 12):
            assert lift_budget(q) == 1
        assert lift_budget(8, convention='squared') < 1

    def test_single_point(self):
        x = common.random_unit(3, 11)
        M = single_point_moment(x)
        assert abs(np.trace(M.entries) - 1.0) < 1e-12

        report = lift_schatten_check(M, 8)
        assert report['hypotheses']
        assert abs(report['schatten1'] - 1.0) < 1e-9
        assert report['within_budget']

        report = lift_psd_check(M, 8)
        assert report['hypotheses']
        assert report['lifted_psd']
        assert report['asserted']

    def test_mixture(self):
        points = [common.random_unit(2, seed) for seed in range(3)]
        M = mixture_moment(points, [1.0, 2.0, 1.0])
        assert abs(np.trace(M.entries) - 1.0) < 1e-12
        assert M.is_sos_symmetric(tol=1e-12)
        report = lift_psd_check(M, 4)
        assert report['precheck']['M']['psd']
        with self.assertRaises(ValueError):
            mixture_moment([])
        with self.assertRaises(ValueError):
            mixture_moment(points, [1.0, -1.0, 1.0])
        with self.assertRaises(ValueError):
            single_point_moment(np.zeros(3))

    def test_zero(self):
        report = lift_schatten_check(SymMatRep(2, 2, np.zeros((4, 4)), check=False), 8)
        assert report['schatten1'] == 0.0
        assert report['within_budget']

    def test_report_only(self):
        M = random_tensor_matrix(2, seed=8, mode='float')
        report = lift_schatten_check(M, 4)
        assert set(['schatten1', 'budget', 'weighted_budget', 'asserted']) <= set(report)
        assert report['budget'] == 1.0

if __name__ == "__main__":
    unittest.main()
