from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )

import io
import json
import numbers
import logging
from fractions import Fraction

import numpy as np

from .poly import HomogPoly, KINDS
from .lowerbound import Graph
from .exceptions import CoefficientError, FormatError

log = logging.getLogger(__name__)

def _coeff(value, where):
    if isinstance(value, bool):
        raise FormatError("%s: boolean coefficient %r" % (where, value))
    if isinstance(value, numbers.Number):
        return value
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            pass
    raise FormatError("%s: cannot read coefficient %r" % (where, value))

def poly_from_json(data):
    """
    Polynomial from the JSON layout {"n", "d", "terms": [{"alpha", "coeff"}]}.
    Duplicate exponents are summed. Coefficients are numbers, [re, im] pairs
    or rational strings such as "1/3".
    """
    if not isinstance(data, dict):
        raise FormatError("polynomial JSON must be an object")
    for key in ('n', 'd', 'terms'):
        if key not in data:
            raise FormatError("polynomial JSON is missing %r" % key)
    n = data['n']
    d = data['d']
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FormatError("n must be a positive integer, got %r" % (n,))
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise FormatError("d must be a positive integer, got %r" % (d,))
    if not isinstance(data['terms'], list):
        raise FormatError("terms must be a list")

    terms = {}
    for i, item in enumerate(data['terms']):
        where = "term %d" % i
        if not isinstance(item, dict) or 'alpha' not in item or 'coeff' not in item:
            raise FormatError("%s must be an object with alpha and coeff" % where)
        alpha = item['alpha']
        if not isinstance(alpha, list) or len(alpha) != n:
            raise FormatError("%s: alpha must be a list of %d integers" % (where, n))
        if any(not isinstance(a, int) or isinstance(a, bool) or a < 0 for a in alpha):
            raise FormatError("%s: alpha entries must be non-negative integers" % where)
        if sum(alpha) != d:
            raise FormatError("%s: alpha %r does not sum to d=%d" % (where, alpha, d))
        key = tuple(alpha)
        terms[key] = terms.get(key, 0) + _coeff(item['coeff'], where)

    values = list(terms.values())
    kind = data.get('kind', None)
    if kind is not None:
        if kind not in KINDS:
            raise FormatError("unknown coefficient kind %r" % (kind,))
    elif any(isinstance(v, complex) for v in values):
        kind = 'complex'
    elif values and all(isinstance(v, (Fraction, int)) for v in values) and \
            any(isinstance(v, Fraction) for v in values):
        kind = 'exact'
    else:
        kind = 'real'
    try:
        return HomogPoly(n, d, terms, kind=kind)
    except CoefficientError as e:
        raise FormatError(str(e))

def load_poly(path):
    with io.open(path, 'r', encoding='utf-8') as fi:
        try:
            data = json.load(fi)
        except ValueError as e:
            raise FormatError("%s: invalid JSON: %s" % (path, e))
    f = poly_from_json(data)
    log.debug("loaded %r from %s", f, path)
    return f

def dumps(data):
    return json.dumps(data, sort_keys=True, indent=2)

def save_poly(path, f):
    with io.open(path, 'w', encoding='utf-8') as fo:
        fo.write(dumps(f.to_dict()))
        fo.write("\n")

def save_json(path, data):
    with io.open(path, 'w', encoding='utf-8') as fo:
        fo.write(dumps(data))
        fo.write("\n")

def read_edge_list(path, n=None):
    """
    Graph from an edge list: one "u v" pair per line, vertices numbered from
    1. Blank lines and lines starting with '#' are skipped. Without ``n`` the
    vertex count is the largest label.
    """
    edges = []
    with io.open(path, 'r', encoding='utf-8') as fi:
        for lineno, line in enumerate(fi, 1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise FormatError("%s:%d: expected 'u v', got %r" % (path, lineno, line))
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise FormatError("%s:%d: vertex labels must be integers" % (path, lineno))
            if u < 1 or v < 1:
                raise FormatError("%s:%d: vertex labels start at 1" % (path, lineno))
            edges.append((u - 1, v - 1))
    if n is None:
        n = max([max(e) + 1 for e in edges] or [1])
    return Graph(n, edges)

def write_edge_list(path, G):
    with io.open(path, 'w', encoding='utf-8') as fo:
        fo.write("# n=%d m=%d\n" % (G.n, G.m))
        for u, v in G.edges:
            fo.write("%d %d\n" % (u + 1, v + 1))

def write_matrix(path, rep):
    """
    Sparse dump of a matrix representation: a header documenting the index
    map, then one "row col value" line per non-zero entry in row-major order.
    Row (i1, ..., ik) is sum_t (i_t - 1) n^(k-t) with 1-indexed i_t.
    """
    entries = np.asarray(rep.entries)
    with io.open(path, 'w', encoding='utf-8') as fo:
        fo.write("# n=%d k=%d shape=%dx%d\n" % (rep.n, rep.k, entries.shape[0], entries.shape[1]))
        fo.write("# row (i1..ik) = sum_t (i_t - 1) * n^(k - t), vertices from 1, rows and cols from 0\n")
        rows, cols = np.nonzero(entries)
        for r, c in zip(rows, cols):
            fo.write("%d %d %s\n" % (r, c, repr(float(entries[r, c]))))
