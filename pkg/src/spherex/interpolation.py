from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )
import math

import numpy as np
from scipy.optimize import minimize_scalar

EPSILON = 1e-10 # sys.float_info.epsilon

def lerp(a, b, t):
    return a + (b - a) * t

def in_unit_interval(v):
    # there can be floating point error
    return v >= -EPSILON and v <= 1.0 + EPSILON

def lobatto_nodes(count, lo=0.0, hi=1.0):
    """
    Chebyshev-Lobatto (extremal) points mapped onto [lo, hi], endpoints
    included, ascending.
    """
    if count < 2:
        return np.array([lo, hi], dtype=np.float64)
    k = np.arange(count, dtype=np.float64)
    t = (1.0 - np.cos(math.pi * k / (count - 1))) / 2.0
    return lerp(lo, hi, t)

def fit_univariate(points, values):
    """
    Coefficients c[0..m] (ascending powers) of the interpolating polynomial
    through ``len(points)`` distinct nodes. Works for complex values.
    """
    points = np.asarray(points, dtype=np.float64)
    values = np.asarray(values)
    vander = np.vander(points, len(points), increasing=True)
    return np.linalg.solve(vander, values)

def eval_univariate(coeffs, t):
    coeffs = np.asarray(coeffs)
    t = np.asarray(t)
    result = np.zeros(t.shape, dtype=np.result_type(coeffs, t, np.float64))
    for c in coeffs[::-1]:
        result = result * t + c
    return result

def refine_max(fn, lo, hi, xatol=1e-12):
    """
    Bounded scalar refinement of a local maximum of ``fn`` on [lo, hi].
    Returns (x, fn(x)).
    """
    if hi - lo <= EPSILON:
        x = lerp(lo, hi, 0.5)
        return x, fn(x)
    res = minimize_scalar(lambda t: -fn(t), bounds=(lo, hi), method='bounded',
                          options={'xatol': xatol})
    return float(res.x), -float(res.fun)

def scan_and_refine(fn, nodes, lo, hi, batch_fn=None):
    """
    Evaluate ``fn`` on ``nodes``, refine every local maximum inside its
    neighbouring nodes and return the best (x, value). Earlier nodes win ties.
    """
    nodes = np.asarray(nodes, dtype=np.float64)
    if batch_fn is not None:
        values = np.asarray(batch_fn(nodes), dtype=np.float64)
    else:
        values = np.array([fn(t) for t in nodes], dtype=np.float64)

    best = int(np.argmax(values))
    best_x, best_v = float(nodes[best]), float(values[best])

    count = len(nodes)
    for i in range(count):
        left = values[i - 1] if i > 0 else -np.inf
        right = values[i + 1] if i < count - 1 else -np.inf
        if values[i] < left or values[i] < right:
            continue
        a = nodes[i - 1] if i > 0 else lo
        b = nodes[i + 1] if i < count - 1 else hi
        x, v = refine_max(fn, a, b)
        if v > best_v:
            best_x, best_v = x, v
    return best_x, best_v
