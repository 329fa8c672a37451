from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )

import os
import io
import json

import numpy as np

from spherex.poly import HomogPoly, MultiIndex
from spherex.utils import compositions, binary_vectors

base = os.path.join(os.path.dirname(os.path.abspath(__file__)))

def sandbox():
    dirname = os.path.join(base, 'results')
    if not os.path.exists(dirname):
        os.makedirs(dirname)

    return dirname

def get_test_file(name):
    return os.path.join(sandbox(), name)

def calibration():
    """Frozen ratio constants written by tools/calibrate.py."""
    with io.open(os.path.join(base, 'calibration.json'), 'r', encoding='utf-8') as fi:
        return json.load(fi)

def rng(seed):
    return np.random.default_rng(seed)

def random_poly(n, d, seed, density=1.0, nonneg=False, integer=False, kind=None):
    """Random homogeneous polynomial; ``density`` is the chance each monomial is kept."""
    r = rng(seed)
    terms = {}
    for alpha in compositions(n, d):
        if density < 1.0 and r.random() >= density:
            continue
        if integer:
            c = int(r.integers(0 if nonneg else -5, 6))
        elif nonneg:
            c = float(r.random())
        else:
            c = float(r.standard_normal())
        terms[alpha] = c
    if kind is None:
        kind = 'exact' if integer else 'real'
    return HomogPoly(n, d, terms, kind=kind)

def random_multilinear(n, d, seed, nonneg=False):
    r = rng(seed)
    terms = {}
    for alpha in binary_vectors(n, d):
        terms[alpha] = float(r.random()) if nonneg else float(r.standard_normal())
    return HomogPoly(n, d, terms)

def random_unit(n, seed, count=None):
    r = rng(seed)
    if count is None:
        x = r.standard_normal(n)
        return x / np.linalg.norm(x)
    X = r.standard_normal((count, n))
    return X / np.linalg.norm(X, axis=1)[:, None]

def random_symmetric(n, seed):
    r = rng(seed)
    A = r.standard_normal((n, n))
    return (A + A.T) / 2.0

def sampled_max(f, seed=0, count=10000):
    """max of f(x) over ``count`` random unit vectors."""
    X = random_unit(f.n, seed, count)
    return float(np.max(f.to_float().eval_many(X).real))

def monomial(*exponents):
    return HomogPoly.monomial(MultiIndex(exponents))

def x1x2x3x4():
    return monomial(1, 1, 1, 1)

def write_poly(name, f):
    path = get_test_file(name)
    with io.open(path, 'w', encoding='utf-8') as fo:
        fo.write(json.dumps(f.to_dict(), sort_keys=True))
    return path
