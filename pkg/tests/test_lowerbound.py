from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )
import unittest
from unittest import mock

import numpy as np

from spherex.poly import HomogPoly
from spherex.lowerbound import (
    Graph,
    resolve_p,
    gnp,
    triangles,
    four_cliques,
    clique_poly,
    natural_representation,
    ordered_edges,
    build_certificate,
    support_eigenvalues,
    shattered_cliques,
    shattered_triangles,
    fsp_lower,
    gap_report,
    )
from spherex import lowerbound
from spherex.exceptions import CertificateError, DegenerateInstanceError, DimensionError
import common

class TestGraph(unittest.TestCase):

    def test_edges_normalized(self):
        G = Graph(4, [(2, 1), (1, 2), (0, 3)])
        assert G.edges == [(0, 3), (1, 2)]
        assert G.m == 2
        assert G.has_edge(2, 1)
        assert G.degree(0) == 1
        assert G.neighbors(3) == set([0])

    def test_errors(self):
        with self.assertRaises(DimensionError):
            Graph(0)
        with self.assertRaises(DimensionError):
            Graph(4, [(0, 4)])
        with self.assertRaises(ValueError):
            Graph(3, [(1, 1)])

    def test_gnp(self):
        G = gnp(6, 1.0, seed=3)
        assert G.m == 15
        assert gnp(6, 0.0).m == 0
        a = gnp(12, 0.5, seed=7)
        b = gnp(12, 0.5, seed=7)
        assert a.edges == b.edges
        assert a.seed == 7 and a.p == 0.5

    def test_resolve_p(self):
        assert abs(resolve_p(8, 'auto') - 0.5) < 1e-12
        with self.assertRaises(ValueError):
            resolve_p(8, 1.5)

    def test_cliques(self):
        K5 = Graph.complete(5)
        assert len(four_cliques(K5)) == 5
        assert len(triangles(K5)) == 10
        assert four_cliques(Graph.complete(4)) == [(0, 1, 2, 3)]

        G = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        assert triangles(G) == [(0, 1, 2)]
        assert four_cliques(G) == []

class TestCliquePoly(unittest.TestCase):

    def test_single_clique(self):
        f = clique_poly(Graph.complete(4))
        assert f == common.x1x2x3x4().to_exact()
        assert f.kind == 'exact'

    def test_natural_representation(self):
        G = gnp(7, 0.8, seed=2)
        A = natural_representation(G)
        f = clique_poly(G)
        for seed in range(3):
            x = common.random_unit(7, seed)
            assert abs(A.quadratic_form(x) - 24.0 * f(x)) < 1e-10

    def test_ordered_edges(self):
        G = Graph(3, [(0, 2)])
        assert list(ordered_edges(G)) == [2, 6]

    def test_support_eigenvalues(self):
        M = np.zeros((3, 3))
        M[0, 0] = 2.0
        assert support_eigenvalues(M) == (0.0, 2.0)
        assert support_eigenvalues(np.zeros((2, 2))) == (0.0, 0.0)

class TestCertificate(unittest.TestCase):

    def test_k4(self):
        cert = build_certificate(Graph.complete(4))
        assert abs(cert.lambda_min + 2.0) < 1e-9
        assert abs(cert.dual_value - 0.5) < 1e-9
        assert cert.clique_count == 1
        assert cert.checks['sos_symmetric']
        assert abs(cert.checks['trace'] - 1.0) < 1e-9

    def test_k5(self):
        cert = build_certificate(Graph.complete(5))
        # 6 |C| / (m |lambda|) with |C| = 5 and m = 10
        assert abs(cert.expected_dual - 3.0 / abs(cert.lambda_min)) < 1e-12
        assert abs(cert.dual_value - cert.expected_dual) < 1e-9
        data = cert.as_dict()
        assert data['m'] == 10
        assert data['clique_count'] == 5

    def test_random_graphs(self):
        for seed in (1, 2):
            G = gnp(20, 0.5, seed=seed)
            cert = build_certificate(G)
            for name in ('sos_symmetric', 'trace_ok', 'psd_ok', 'dual_ok'):
                assert cert.checks[name], name
            assert cert.M.shape == (400, 400)

    def test_degenerate(self):
        with self.assertRaises(DegenerateInstanceError):
            build_certificate(Graph(4))
        with self.assertRaises(DegenerateInstanceError):
            build_certificate(Graph(3, [(0, 1), (1, 2), (0, 2)]))

    def test_failed_check(self):
        # a negative tolerance rejects even the exact K4 dual value
        with mock.patch.object(lowerbound, 'DUAL_TOL', -1.0):
            with self.assertRaises(CertificateError) as ctx:
                build_certificate(Graph.complete(4))
        assert 'dual_ok' in str(ctx.exception)
        assert isinstance(ctx.exception, DegenerateInstanceError)

class TestShattered(unittest.TestCase):

    def test_cliques(self):
        K5 = Graph.complete(5)
        assert shattered_cliques(K5, [0], [1], [2], [3, 4]) == 2
        assert shattered_cliques(K5, [0], [1], [2], []) == 0

    def test_triangles(self):
        K4 = Graph.complete(4)
        assert shattered_triangles(K4, [0], [1], [2, 3]) == 2
        assert shattered_triangles(K4, [0, 1], [2], [3]) == 2

    def test_validation(self):
        K4 = Graph.complete(4)
        with self.assertRaises(ValueError):
            shattered_triangles(K4, [0], [0], [1])
        with self.assertRaises(DimensionError):
            shattered_cliques(K4, [0], [1], [2], [7])

class TestFspLower(unittest.TestCase):

    def test_values(self):
        assert abs(fsp_lower(common.monomial(2, 2)) - 0.25) < 1e-12
        assert abs(fsp_lower(HomogPoly(1, 4, {(4,): 1.0})) - 1.0) < 1e-12
        assert fsp_lower(HomogPoly.zero(3, 4)) == 0.0

class TestGapReport(unittest.TestCase):

    def test_k4(self):
        report, cert, f = gap_report(4, 1.0, oracle_restarts=20, graph=Graph.complete(4))
        assert abs(report['oracle_norm_estimate'] - 1.0 / 16.0) < 1e-6
        assert abs(report['ratio'] - 8.0) < 1e-3
        assert abs(report['normalized_ratio'] - 1.0 / 3.0) < 1e-4
        assert abs(report['sos_upper'] - 2.0) < 1e-9
        assert report['dual_below_upper']
        assert f == clique_poly(Graph.complete(4))

    def test_random(self):
        report, cert, f = gap_report(12, 0.8, seed=5, oracle_restarts=10)
        assert report['seed'] == 5
        assert report['m'] == cert.m
        assert report['dual_below_upper']
        assert report['ratio'] > 0.0

if __name__ == "__main__":
    unittest.main()
