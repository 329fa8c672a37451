from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )
import io
import os
import json
import unittest
from unittest import mock

from spherex import cli
from spherex import lowerbound
from spherex import fileio
from spherex.poly import HomogPoly
from spherex.lowerbound import Graph
import common

def read(path):
    with io.open(path, 'r', encoding='utf-8') as fi:
        return fi.read()

class TestCommands(unittest.TestCase):

    def test_optimize(self):
        poly = common.write_poly('cli_square.json', common.monomial(2, 2))
        out = common.get_test_file('cli_optimize.json')
        code = cli.main(['optimize', '--poly', poly, '--out', out])
        assert code == cli.EXIT_OK
        report = json.loads(read(out))
        assert report['command'] == 'optimize'
        assert report['args']['poly'] == poly
        assert 'version' in report
        result = report['result']
        assert result['method'] == 'nnc'
        assert 0.0 < result['value'] <= result['upper']['value'] + 1e-9

    def test_rerun_identical(self):
        poly = common.write_poly('cli_random.json', common.random_poly(3, 4, seed=8))
        out = common.get_test_file('cli_rerun.json')
        args = ['optimize', '--poly', poly, '--method', 'general', '--q', '8', '--c-grid', '9',
                '--out', out]
        assert cli.main(args) == cli.EXIT_OK
        first = read(out)
        assert cli.main(args) == cli.EXIT_OK
        assert read(out) == first

    def test_bound(self):
        poly = common.write_poly('cli_multilinear.json', common.x1x2x3x4())
        out = common.get_test_file('cli_bound.json')
        assert cli.main(['bound', '--poly', poly, '--method', 'rowsum', '--out', out]) == cli.EXIT_OK
        result = json.loads(read(out))['result']
        assert list(result) == ['rowsum']
        assert result['rowsum']['applicable']
        assert abs(result['rowsum']['value'] - 1.0 / 12.0) < 1e-12

    def test_clique_instance(self):
        graph = common.get_test_file('cli_k4.txt')
        fileio.write_edge_list(graph, Graph.complete(4))
        outdir = os.path.join(common.sandbox(), 'cli_clique')
        code = cli.main(['clique-instance', '--graph', graph, '--oracle-restarts', '20',
                         '--outdir', outdir])
        assert code == cli.EXIT_OK
        for name in ('graph.txt', 'poly.json', 'certificate.txt', 'report.json'):
            assert os.path.exists(os.path.join(outdir, name)), name
        report = json.loads(read(os.path.join(outdir, 'report.json')))
        assert abs(report['dual_value'] - 0.5) < 1e-9
        assert report['clique_count'] == 1
        f = fileio.load_poly(os.path.join(outdir, 'poly.json'))
        assert f == common.x1x2x3x4()

    def test_clique_instance_random(self):
        outdir = os.path.join(common.sandbox(), 'cli_clique_random')
        code = cli.main(['clique-instance', '--n', '10', '--p', '0.9', '--seed', '2',
                         '--oracle-restarts', '5', '--outdir', outdir])
        assert code == cli.EXIT_OK
        report = json.loads(read(os.path.join(outdir, 'report.json')))
        assert report['seed'] == 2
        assert report['p'] == 0.9

    def test_tetris_verify(self):
        out = common.get_test_file('cli_tetris.json')
        assert cli.main(['tetris-verify', '--n', '2', '--q', '4', '--out', out]) == cli.EXIT_OK
        result = json.loads(read(out))['result']
        assert result['pass']
        assert result['mode'] == 'exact'

class TestExitCodes(unittest.TestCase):

    def test_usage(self):
        with self.assertRaises(SystemExit):
            cli.main(['clique-instance'])
        with self.assertRaises(SystemExit):
            cli.main(['optimize'])
        with self.assertRaises(SystemExit):
            cli.main(['clique-instance', '--n', '5', '--p', 'often'])

    def test_missing_file(self):
        path = common.get_test_file('does_not_exist.json')
        assert cli.main(['optimize', '--poly', path]) == cli.EXIT_USAGE

    def test_bad_format(self):
        path = common.get_test_file('cli_bad.json')
        with io.open(path, 'w', encoding='utf-8') as fo:
            fo.write('{"n": 2, "d": 2, "terms": [{"alpha": [3, 0], "coeff": 1}]}')
        assert cli.main(['bound', '--poly', path]) == cli.EXIT_USAGE

    def test_complex_rejected(self):
        poly = common.write_poly('cli_complex.json', HomogPoly(2, 2, {(1, 1): 1j}))
        assert cli.main(['optimize', '--poly', poly]) == cli.EXIT_USAGE

    def test_capacity(self):
        code = cli.main(['tetris-verify', '--n', '3', '--q', '8', '--cap', '10'])
        assert code == cli.EXIT_CAPACITY

    def test_degenerate(self):
        graph = common.get_test_file('cli_triangle.txt')
        fileio.write_edge_list(graph, Graph(3, [(0, 1), (1, 2), (0, 2)]))
        outdir = os.path.join(common.sandbox(), 'cli_triangle')
        code = cli.main(['clique-instance', '--graph', graph, '--outdir', outdir])
        assert code == cli.EXIT_DEGENERATE

    def test_certificate_rejected(self):
        graph = common.get_test_file('cli_k4_strict.txt')
        fileio.write_edge_list(graph, Graph.complete(4))
        outdir = os.path.join(common.sandbox(), 'cli_k4_strict')
        with mock.patch.object(lowerbound, 'DUAL_TOL', -1.0):
            code = cli.main(['clique-instance', '--graph', graph, '--oracle-restarts', '5',
                             '--outdir', outdir])
        assert code == cli.EXIT_DEGENERATE

    def test_zero_poly_bad_level(self):
        poly = common.write_poly('cli_zero.json', HomogPoly.zero(2, 4))
        assert cli.main(['optimize', '--poly', poly, '--q', '3']) == cli.EXIT_USAGE
        assert cli.main(['optimize', '--poly', poly]) == cli.EXIT_OK

    def test_sparse_threshold_flag(self):
        poly = common.write_poly('cli_dense.json',
                                 HomogPoly(2, 2, {(2, 0): 1.0, (1, 1): -1.0, (0, 2): 1.0}))
        out = common.get_test_file('cli_sparse.json')
        args = ['optimize', '--poly', poly, '--sparse-threshold', '4', '--out', out]
        assert cli.main(args) == cli.EXIT_OK
        report = json.loads(read(out))
        assert report['args']['sparse_threshold'] == 4
        assert report['result']['method'] == 'sparse'

if __name__ == "__main__":
    unittest.main()
