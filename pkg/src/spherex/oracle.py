from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )

import logging

import numpy as np

from .poly import MultiIndex, HomogPoly, quadratic_matrix
from .decompose import multilinear_parts
from .spectral import quadratic_norm
from .exceptions import DimensionError

log = logging.getLogger(__name__)

DEFAULT_RESTARTS = 200
DEFAULT_ITERS = 2000
DEFAULT_TOL = 1e-10

ARMIJO = 1e-4
MIN_STEP = 1e-14

class OracleResult(object):
    """
    Best |f(x)| found by the brute force search. Unpacks as (value, x) so
    ``value, x = brute_norm2(f)`` works; ``converged`` is False when some
    restart hit the iteration limit before the gradient tolerance.
    """
    __slots__ = ('value', 'x', 'converged', 'iterations', 'restarts', 'seed', 'unconverged')

    def __init__(self, value, x, converged, iterations, restarts, seed, unconverged=0):
        self.value = float(value)
        self.x = x
        self.converged = bool(converged)
        self.iterations = int(iterations)
        self.restarts = restarts
        self.seed = seed
        self.unconverged = int(unconverged)

    def __iter__(self):
        yield self.value
        yield self.x

    def as_dict(self):
        return {
            'value': self.value,
            'x': [float(v) for v in self.x],
            'converged': self.converged,
            'iterations': self.iterations,
            'restarts': self.restarts,
            'seed': self.seed,
            'unconverged': self.unconverged,
        }

    def __repr__(self):
        return "OracleResult(value=%g, converged=%s)" % (self.value, self.converged)

def derivative(f, i):
    """Partial derivative in variable i (degree d-1)."""
    if f.d == 0:
        return HomogPoly.zero(f.n, 0, kind=f.kind)
    terms = {}
    for alpha, coeff in f.items():
        a = alpha[i]
        if a == 0:
            continue
        terms[alpha - MultiIndex.unit(f.n, i)] = coeff * a
    return HomogPoly(f.n, f.d - 1, terms, kind=f.kind)

def _gradient_arrays(f):
    """(exponents, coefficients) for every partial derivative stacked in one table."""
    exps, coeffs = f.arrays()
    n = f.n
    rows = []
    vals = []
    owner = []
    for i in range(n):
        mask = exps[:, i] > 0
        e = exps[mask].copy()
        e[:, i] -= 1
        rows.append(e)
        vals.append(coeffs[mask] * exps[mask, i])
        owner.append(np.full(int(mask.sum()), i, dtype=np.int64))
    return (np.concatenate(rows) if rows else np.zeros((0, n), dtype=np.int64),
            np.concatenate(vals) if vals else np.zeros(0),
            np.concatenate(owner) if owner else np.zeros(0, dtype=np.int64))

def grad(f, x):
    """Gradient of f at x by termwise differentiation."""
    x = np.asarray(x)
    if x.shape != (f.n,):
        raise DimensionError("point has shape %r, polynomial has %d variables" % (x.shape, f.n))
    return grad_many(f, x[None, :])[0]

def grad_many(f, X, tables=None):
    X = np.asarray(X, dtype=np.float64)
    exps, vals, owner = tables if tables is not None else _gradient_arrays(f)
    out = np.zeros(X.shape, dtype=np.result_type(vals, np.float64))
    if vals.size == 0:
        return out
    monomials = np.prod(X[:, None, :] ** exps[None, :, :], axis=2) * vals[None, :]
    for i in range(f.n):
        out[:, i] = monomials[:, owner == i].sum(axis=1)
    return out

def _normalize_rows(X):
    norms = np.linalg.norm(X, axis=1)
    norms[norms == 0] = 1.0
    return X / norms[:, None]

def _ascent(f, X, iters, tol, tables, scale):
    """
    Projected gradient ascent of f on the sphere for every row of X with
    Armijo backtracking along the normalized tangent direction. Returns
    (X, values, iterations used, converged mask).
    """
    values = f.eval_many(X).real
    step = np.full(X.shape[0], 0.5)
    active = np.ones(X.shape[0], dtype=bool)
    converged = np.zeros(X.shape[0], dtype=bool)
    it = 0
    for it in range(1, iters + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        Xa = X[idx]
        G = grad_many(f, Xa, tables).real
        tangent = G - np.sum(G * Xa, axis=1)[:, None] * Xa
        tnorm = np.linalg.norm(tangent, axis=1)
        done = tnorm <= tol * scale
        converged[idx[done]] = True
        active[idx[done]] = False
        keep = ~done
        if not keep.any():
            continue
        idx = idx[keep]
        Xa = Xa[keep]
        direction = tangent[keep] / tnorm[keep][:, None]
        slope = tnorm[keep]
        base = values[idx]
        t = np.minimum(step[idx] * 2.0, 1.0)
        accepted = np.zeros(idx.size, dtype=bool)
        new_X = Xa.copy()
        new_vals = base.copy()
        for attempt in range(60):
            pending = ~accepted
            if not pending.any():
                break
            trial = _normalize_rows(Xa[pending] + t[pending][:, None] * direction[pending])
            trial_vals = f.eval_many(trial).real
            ok = trial_vals >= base[pending] + ARMIJO * t[pending] * slope[pending]
            where = np.flatnonzero(pending)
            good = where[ok]
            new_X[good] = trial[ok]
            new_vals[good] = trial_vals[ok]
            accepted[good] = True
            t[where[~ok]] *= 0.5
            if np.all(t[~accepted] < MIN_STEP):
                break
        # no admissible step: stationary to working precision
        stuck = ~accepted
        converged[idx[stuck]] = True
        active[idx[stuck]] = False
        X[idx] = new_X
        values[idx] = new_vals
        step[idx] = t
    return X, values, it, converged

def _quadratic_norm(f):
    Q = np.asarray(quadratic_matrix(f.to_float()), dtype=np.float64)
    value, vec = quadratic_norm(Q)
    return value, vec

def brute_norm2(f, restarts=DEFAULT_RESTARTS, iters=DEFAULT_ITERS, tol=DEFAULT_TOL, seed=0):
    """
    Estimate of ||f||_2 = sup |f(x)| over the unit sphere by projected
    gradient ascent on f and -f from ``restarts`` random starts. Restart r
    draws its start from ``default_rng([seed, r])``, so a run with more
    restarts contains every start of a shorter one. Quadratics go through an
    exact eigensolve.
    """
    if f.kind == 'complex':
        raise ValueError("the oracle maximizes real polynomials")
    f = f.to_float()
    n = f.n

    if f.is_zero():
        x = np.zeros(n)
        x[0] = 1.0
        return OracleResult(0.0, x, True, 0, restarts, seed)

    if f.d == 2:
        value, vec = _quadratic_norm(f)
        return OracleResult(value, vec, True, 0, restarts, seed)

    if n == 1 or f.d == 0:
        x = np.zeros(n)
        x[0] = 1.0
        return OracleResult(abs(f.evaluate(x)), x, True, 0, restarts, seed)

    starts = np.empty((restarts, n))
    for r in range(restarts):
        starts[r] = np.random.default_rng([seed, r]).standard_normal(n)
    starts = _normalize_rows(starts)

    tables = _gradient_arrays(f)
    neg = -f
    neg_tables = _gradient_arrays(neg)

    best_value = -1.0
    best_x = None
    iterations = 0
    unconverged = 0
    for sign, g, tab in ((1.0, f, tables), (-1.0, neg, neg_tables)):
        X, values, used, converged = _ascent(g, starts.copy(), iters, tol, tab, f.max_abs_coeff())
        iterations = max(iterations, used)
        unconverged += int((~converged).sum())
        # first restart wins ties
        r = int(np.argmax(values))
        if values[r] > best_value:
            best_value = float(values[r])
            best_x = X[r]

    if unconverged:
        log.warning("oracle: %d of %d ascents stopped at the iteration limit (%d)",
                    unconverged, 2 * restarts, iters)
    return OracleResult(max(0.0, best_value), best_x, unconverged == 0, iterations,
                        restarts, seed, unconverged)

def weak_decoupling_report(f, norm, restarts=DEFAULT_RESTARTS, seed=0):
    """
    For every multilinear part G_{2 alpha}: the lower value
    y^{2 alpha} ||G_{2 alpha}||_2 with y = sqrt(alpha)/sqrt(|alpha|)
    (y^{2 alpha} taken as 1 for alpha = 0). ``ratio`` divides it by
    ``norm``, the oracle value of ||f||_2.
    """
    report = []
    for alpha, part in multilinear_parts(f).items():
        t = alpha.degree
        weight = 1.0
        if t:
            for a in alpha:
                if a:
                    weight *= (a / float(t)) ** a
        if part.d:
            part_norm = brute_norm2(part, restarts=restarts, seed=seed).value
        else:
            part_norm = part.max_abs_coeff()
        lower = weight * part_norm
        report.append({
            'alpha': list(alpha),
            'weight': weight,
            'part_norm': part_norm,
            'lower': lower,
            'ratio': (lower / norm) if norm > 0 else 0.0,
        })
    return report
