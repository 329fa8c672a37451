from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )
import unittest

import numpy as np

from spherex.poly import HomogPoly
from spherex.oracle import (
    derivative,
    grad,
    grad_many,
    brute_norm2,
    weak_decoupling_report,
    )
from spherex.exceptions import DimensionError
import common

class TestGradient(unittest.TestCase):

    def test_examples(self):
        assert np.allclose(grad(common.monomial(2), np.array([3.0])), [6.0])
        assert np.allclose(grad(common.monomial(1, 1), np.array([0.3, -2.0])), [-2.0, 0.3])

    def test_derivative(self):
        f = HomogPoly(2, 3, {(2, 1): 3.0, (0, 3): 1.0})
        assert derivative(f, 0) == HomogPoly(2, 2, {(1, 1): 6.0})
        assert derivative(f, 1) == HomogPoly(2, 2, {(2, 0): 3.0, (0, 2): 3.0})

    def test_euler_identity(self):
        f = common.random_poly(4, 5, seed=3)
        x = common.random_unit(4, 9) * 1.7
        assert abs(grad(f, x).dot(x) - 5 * f(x)) < 1e-9

    def test_finite_differences(self):
        f = common.random_poly(3, 4, seed=14)
        x = common.random_unit(3, 2)
        g = grad(f, x)
        h = 1e-6
        for i in range(3):
            e = np.zeros(3)
            e[i] = h
            fd = (f(x + e) - f(x - e)) / (2 * h)
            assert abs(fd - g[i]) <= 1e-5 * max(1.0, abs(g[i]))

    def test_many(self):
        f = common.random_poly(3, 3, seed=1)
        X = common.random_unit(3, 4, count=6)
        G = grad_many(f, X)
        for row, g in zip(X, G):
            assert np.allclose(grad(f, row), g)

    def test_dimension(self):
        with self.assertRaises(DimensionError):
            grad(common.monomial(1, 1), np.ones(3))

class TestBruteNorm(unittest.TestCase):

    def test_quadratic(self):
        f = HomogPoly.from_quadratic(np.diag([3.0, -5.0]))
        value, x = brute_norm2(f)
        assert abs(value - 5.0) < 1e-12
        assert abs(abs(x[1]) - 1.0) < 1e-12

    def test_multilinear_monomial(self):
        result = brute_norm2(common.x1x2x3x4(), restarts=20)
        assert abs(result.value - 1.0 / 16.0) < 1e-6
        assert abs(np.linalg.norm(result.x) - 1.0) < 1e-12

    def test_sphere_power(self):
        f = HomogPoly(3, 2, {(2, 0, 0): 1.0, (0, 2, 0): 1.0, (0, 0, 2): 1.0}) ** 2
        result = brute_norm2(f, restarts=10)
        assert abs(result.value - 1.0) < 1e-9

    def test_negative_side(self):
        f = -common.x1x2x3x4()
        result = brute_norm2(f, restarts=20)
        assert abs(result.value - 1.0 / 16.0) < 1e-6

    def test_monotone_in_restarts(self):
        f = common.random_poly(4, 4, seed=30)
        small = brute_norm2(f, restarts=5, seed=2)
        large = brute_norm2(f, restarts=25, seed=2)
        assert large.value >= small.value - 1e-12

    def test_scale_equivariance(self):
        f = common.random_poly(3, 3, seed=31)
        a = brute_norm2(f, restarts=10, seed=1).value
        b = brute_norm2(f * -2.5, restarts=10, seed=1).value
        assert abs(b - 2.5 * a) <= 1e-8 * max(1.0, b)

    def test_upper_by_sampling(self):
        f = common.random_poly(3, 4, seed=32)
        value = brute_norm2(f, restarts=50).value
        norm = max(common.sampled_max(f), common.sampled_max(-f))
        assert value >= norm - 1e-9

    def test_trivial_cases(self):
        value, x = brute_norm2(HomogPoly.zero(3, 4))
        assert value == 0.0
        value, x = brute_norm2(HomogPoly(1, 3, {(3,): -2.0}))
        assert abs(value - 2.0) < 1e-12
        with self.assertRaises(ValueError):
            brute_norm2(HomogPoly(2, 2, {(1, 1): 1j}))

    def test_as_dict(self):
        result = brute_norm2(common.monomial(2, 2), restarts=8, seed=4)
        data = result.as_dict()
        assert data['restarts'] == 8
        assert data['seed'] == 4
        assert len(data['x']) == 2

class TestWeakDecoupling(unittest.TestCase):

    def test_square_monomial(self):
        f = common.monomial(2, 2)
        report = weak_decoupling_report(f, 0.25, restarts=10)
        assert len(report) == 1
        entry = report[0]
        assert entry['alpha'] == [1, 1]
        assert abs(entry['weight'] - 0.25) < 1e-12
        assert abs(entry['part_norm'] - 1.0) < 1e-12
        assert abs(entry['ratio'] - 1.0) < 1e-12

    def test_ratios_bounded(self):
        f = common.random_poly(3, 4, seed=40)
        norm = brute_norm2(f, restarts=100).value
        for entry in weak_decoupling_report(f, norm, restarts=20):
            assert entry['lower'] >= 0.0
            assert entry['ratio'] >= 0.0

    def test_calibrated_constant(self):
        limit = common.calibration()['weak_decoupling']
        for seed in range(3):
            f = common.random_poly(4, 4, seed=200 + seed)
            norm = brute_norm2(f, restarts=50, seed=seed).value
            for entry in weak_decoupling_report(f, norm, restarts=10):
                assert entry['ratio'] <= limit, (seed, entry)

if __name__ == "__main__":
    unittest.main()
