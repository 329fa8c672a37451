from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )

import os
import sys
import logging
import argparse
import numbers
from fractions import Fraction

import numpy as np

from . import __version__
from . import config
from . import fileio
from .rounding import optimize, DEFAULT_C_GRID, CANDIDATE_METHODS
from .spectral import all_bounds
from .oracle import brute_norm2, DEFAULT_RESTARTS
from .lowerbound import gap_report, gnp, resolve_p
from .tetris import random_tensor_matrix, verify_tetris, MODES
from .exceptions import (
    CapacityError,
    CertificateError,
    ConfigError,
    DegenerateInstanceError,
    SpherexError,
    )

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_DEGENERATE = 4

def jsonable(value):
    """Plain JSON types for reports holding numpy scalars, tuples and Fractions."""
    if isinstance(value, dict):
        return dict((str(k), jsonable(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (numbers.Integral, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (numbers.Real, np.floating)):
        return float(value)
    return value

def echo_args(args):
    skip = ('func', 'verbose')
    return dict((k, v) for k, v in sorted(vars(args).items()) if k not in skip)

def emit(args, command, result):
    """Print the report on stdout (and to --out); every report carries version and flags."""
    report = {
        'version': __version__,
        'command': command,
        'args': echo_args(args),
        'result': result,
    }
    text = fileio.dumps(jsonable(report))
    out = getattr(args, 'out', None)
    if out:
        with open(out, 'w') as fo:
            fo.write(text)
            fo.write("\n")
    sys.stdout.write(text)
    sys.stdout.write("\n")
    return EXIT_OK

def cmd_optimize(args):
    f = fileio.load_poly(args.poly)
    report = optimize(f, q=args.q, method=args.method, c_grid=args.c_grid,
                      sparse_threshold=args.sparse_threshold)
    result = report.as_dict()
    if args.oracle:
        result['oracle'] = brute_norm2(f, restarts=args.oracle_restarts, seed=args.seed).as_dict()
    print("optimize: value=%.6g upper=%.6g ratio=%s" % (report.value, report.upper.value, report.ratio),
          file=sys.stderr)
    return emit(args, 'optimize', result)

def cmd_bound(args):
    f = fileio.load_poly(args.poly)
    bounds = all_bounds(f, args.q)
    result = {}
    for name in sorted(bounds):
        if args.method and name != args.method:
            continue
        applicable, est = bounds[name]
        entry = {'applicable': applicable}
        if est is not None:
            entry.update(est.as_dict())
        result[name] = entry
    return emit(args, 'bound', result)

def cmd_clique_instance(args):
    if args.graph:
        G = fileio.read_edge_list(args.graph, args.n)
        G.seed = args.seed
    else:
        G = gnp(args.n, resolve_p(args.n, args.p), args.seed)
    report, cert, f = gap_report(G.n, G.p, args.seed, args.oracle_restarts, graph=G)

    outdir = args.outdir
    if not os.path.exists(outdir):
        os.makedirs(outdir)
    fileio.write_edge_list(os.path.join(outdir, 'graph.txt'), G)
    fileio.save_poly(os.path.join(outdir, 'poly.json'), f)
    fileio.write_matrix(os.path.join(outdir, 'certificate.txt'), cert.M)
    fileio.save_json(os.path.join(outdir, 'report.json'), jsonable(report))
    print("clique-instance: m=%d cliques=%d dual=%.6g ratio=%s" % (report['m'], report['clique_count'],
          report['dual_value'], report['ratio']), file=sys.stderr)
    return emit(args, 'clique-instance', report)

def cmd_tetris_verify(args):
    M = random_tensor_matrix(args.n, args.seed, args.mode)
    report = verify_tetris(M, args.q, args.mode)
    print("tetris-verify: error=%g pass=%s" % (report['max_abs_error'], report['pass']), file=sys.stderr)
    return emit(args, 'tetris-verify', report)

def probability(value):
    if value == 'auto':
        return value
    try:
        return float(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a probability or 'auto', got %r" % value)

def build_parser():
    parser = argparse.ArgumentParser(prog='spherex',
                                     description="Maximize homogeneous polynomials over the unit sphere.")
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help="log progress to stderr (repeat for debug)")
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    def common(p):
        p.add_argument('--cap', type=int, default=None,
                       help="term capacity (matrix entries get 10x); overrides SPHEREX_CAP")
        p.add_argument('--out', default=None, help="also write the JSON report to this file")

    p = sub.add_parser('optimize', help="run a candidate-set algorithm")
    p.add_argument('--poly', required=True)
    p.add_argument('--q', type=int, default=None)
    p.add_argument('--method', choices=sorted(CANDIDATE_METHODS) + ['auto'], default='auto')
    p.add_argument('--c-grid', type=int, default=DEFAULT_C_GRID)
    p.add_argument('--sparse-threshold', type=int, default=None,
                   help="auto picks sparse below this many terms (default n)")
    p.add_argument('--oracle', action='store_true', help="add a brute force estimate of ||f||_2")
    p.add_argument('--oracle-restarts', type=int, default=DEFAULT_RESTARTS)
    p.add_argument('--seed', type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser('bound', help="every applicable upper estimate")
    p.add_argument('--poly', required=True)
    p.add_argument('--q', type=int, default=None)
    p.add_argument('--method', default=None, help="report only this estimate")
    common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser('clique-instance', help="4-clique gap instance and its certificate")
    p.add_argument('--n', type=int, default=None)
    p.add_argument('--p', type=probability, default='auto')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--graph', default=None, help="edge list to use instead of G(n, p)")
    p.add_argument('--oracle-restarts', type=int, default=1000)
    p.add_argument('--outdir', default='.')
    common(p)
    p.set_defaults(func=cmd_clique_instance)

    p = sub.add_parser('tetris-verify', help="check the tetris decomposition on a random tensor")
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--q', type=int, required=True)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--mode', choices=MODES, default='exact')
    common(p)
    p.set_defaults(func=cmd_tetris_verify)
    return parser

def run(args):
    if args.cap is not None:
        with config.override(args.cap):
            return args.func(args)
    return args.func(args)

def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(levelname)s %(name)s: %(message)s")

    if args.command == 'clique-instance' and args.n is None and args.graph is None:
        parser.error("clique-instance needs --n or --graph")

    try:
        return run(args)
    except CapacityError as e:
        log.error("%s", e)
        return EXIT_CAPACITY
    except CertificateError as e:
        log.error("certificate rejected: %s", e)
        return EXIT_DEGENERATE
    except DegenerateInstanceError as e:
        log.error("degenerate instance: %s", e)
        return EXIT_DEGENERATE
    except (ConfigError, ValueError, IOError, SpherexError) as e:
        log.error("%s", e)
        return EXIT_USAGE

if __name__ == "__main__":
    sys.exit(main())
