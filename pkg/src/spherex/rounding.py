from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )

import math
import logging
import itertools

import numpy as np

from . import config
from .poly import HomogPoly, MultiIndex, quadratic_matrix, pow
from .decompose import (
    fold_quadratic,
    quadratic_stack,
    fold_quadratic_matrices,
    multilinear_parts,
    UNFOLD_EXACT,
    )
from .spectral import (
    UpperEstimate,
    powered_upper_estimate,
    quadratic_norm,
    check_symmetric,
    )
from .interpolation import (
    EPSILON,
    lobatto_nodes,
    fit_univariate,
    refine_max,
    scan_and_refine,
    )
from .utils import compositions, compositions_up_to, binary_vectors, register
from .exceptions import (
    DegreeError,
    DimensionError,
    CoefficientError,
    )

log = logging.getLogger(__name__)

DEFAULT_C_GRID = 33
DEFAULT_THETA_GRID = 32
DEFAULT_WITNESSES = 2

# complex_to_real keeps at least |f(z)| / (2e)^d: 2^d from splitting z into
# a + ib, then d!/d^d from the sign decoupling.
COMPLEX_TO_REAL_BASE = 2.0 * math.e

CANDIDATE_METHODS = {}

class Candidate(object):
    """
    A candidate vector with the enumeration parameters that produced it.
    ``provenance`` is a plain dict (JSON friendly) and is enough to rebuild
    the vector with :meth:`replay`.
    """
    __slots__ = ('vector', 'provenance')

    def __init__(self, vector, provenance):
        vector = np.asarray(vector)
        if not np.all(np.isfinite(vector)):
            raise ValueError("candidate vector has non-finite entries")
        self.vector = vector
        self.provenance = provenance

    def replay(self, f):
        return replay(f, self.provenance)

    def __repr__(self):
        return "Candidate(%s)" % (self.provenance.get('method'),)

class OptReport(object):
    """Best candidate of a run, with the upper estimate it is compared against."""
    __slots__ = ('x_best', 'value', 'upper', 'ratio', 'method', 'q',
                 'candidates_evaluated', 'provenance')

    def __init__(self, x_best, value, upper=None, method=None, q=None,
                 candidates_evaluated=0, provenance=None):
        self.x_best = x_best
        self.value = float(value)
        self.upper = upper
        self.method = method
        self.q = q
        self.candidates_evaluated = int(candidates_evaluated)
        self.provenance = provenance or {}
        self.ratio = None
        if upper is not None and self.value > 0:
            self.ratio = upper.value / self.value

    def as_dict(self):
        return {
            'x_best': [float(v) for v in self.x_best],
            'value': self.value,
            'upper': self.upper.as_dict() if self.upper is not None else None,
            'ratio': self.ratio,
            'method': self.method,
            'q': self.q,
            'candidates_evaluated': self.candidates_evaluated,
            'provenance': self.provenance,
        }

    def __repr__(self):
        return "OptReport(method=%s, value=%g, ratio=%s)" % (self.method, self.value, self.ratio)

def _unit(v):
    norm = np.linalg.norm(v)
    if norm <= EPSILON:
        return None
    return v / norm

def _orient(v):
    """Sign convention for eigenvectors: the largest entry (first on ties) is positive."""
    i = int(np.argmax(np.abs(v)))
    if v[i] < 0:
        return -v
    return v

def roots_of_unity(p):
    return np.exp(2j * np.pi * np.arange(p) / p)

# -- quadratics

def quad_argmax(Q):
    """(unit vector, max |x^T Q x|) for symmetric Q."""
    Q = np.asarray(Q, dtype=np.float64)
    check_symmetric(Q)
    value, vec = quadratic_norm(Q)
    return _orient(vec), value

def quad_argmax_many(Qs):
    """Batched :func:`quad_argmax` over a (N, n, n) stack."""
    Qs = np.asarray(Qs, dtype=np.float64)
    w, v = np.linalg.eigh(Qs)
    top = np.abs(w[:, -1]) >= np.abs(w[:, 0])
    vecs = np.where(top[:, None], v[:, :, -1], v[:, :, 0])
    values = np.where(top, np.abs(w[:, -1]), np.abs(w[:, 0]))
    vecs = np.array([_orient(x) for x in vecs]).reshape(Qs.shape[0], Qs.shape[1])
    return vecs, values

def complex_quad_argmax_many(Qs, theta_grid=DEFAULT_THETA_GRID):
    """
    For each complex symmetric Q = A + iB in the stack: the real unit x with
    the best max over the theta grid of lambda_max(A cos t + B sin t), and
    the modulus |x^T Q x| it reaches.
    """
    Qs = np.asarray(Qs)
    A = Qs.real.astype(np.float64)
    B = Qs.imag.astype(np.float64) if np.iscomplexobj(Qs) else np.zeros_like(A)
    if not np.any(B):
        return quad_argmax_many(A)
    thetas = 2.0 * np.pi * np.arange(theta_grid) / theta_grid
    mats = (np.cos(thetas)[None, :, None, None] * A[:, None, :, :]
            + np.sin(thetas)[None, :, None, None] * B[:, None, :, :])
    w, v = np.linalg.eigh(mats)
    best = np.argmax(w[:, :, -1], axis=1)
    rows = np.arange(Qs.shape[0])
    vecs = v[rows, best, :, -1]
    vecs = np.array([_orient(x) for x in vecs]).reshape(A.shape[0], A.shape[1])
    values = np.abs(np.einsum('ni,nij,nj->n', vecs, Qs, vecs))
    return vecs, values

def complex_quad_argmax(A, B, theta_grid=DEFAULT_THETA_GRID):
    """max over real unit x of |x^T (A + iB) x|, on a grid of theta_grid angles."""
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    check_symmetric(A)
    check_symmetric(B)
    if A.shape != B.shape:
        raise DimensionError("shape mismatch %r != %r" % (A.shape, B.shape))
    if theta_grid < 8:
        raise ValueError("theta grid needs at least 8 angles, got %d" % theta_grid)
    if not np.any(B):
        return quad_argmax(A)
    vecs, values = complex_quad_argmax_many((A + 1j * B)[None, :, :], theta_grid)
    return vecs[0], float(values[0])

# -- decoupling and real-ification

def decouple(f, xs):
    """
    Best normalized sum_i xi_i x^i over all 2^d sign patterns xi, scored by
    |f|. Returns (unit vector, value); the first pattern wins ties.
    """
    xs = [np.asarray(x) for x in xs]
    for x in xs:
        if x.shape != (f.n,):
            raise DimensionError("vector has shape %r, polynomial has %d variables" % (x.shape, f.n))
    if len(xs) != f.d:
        raise DimensionError("decoupling needs d=%d vectors, got %d" % (f.d, len(xs)))
    stack = np.array(xs, dtype=np.float64).reshape(len(xs), f.n)
    signs = np.array(list(itertools.product((1.0, -1.0), repeat=len(xs)))).reshape(-1, len(xs))
    sums = signs.dot(stack)
    norms = np.linalg.norm(sums, axis=1)
    ok = norms > EPSILON
    if not ok.any():
        x = np.zeros(f.n)
        x[0] = 1.0
        return x, abs(f.evaluate(x))
    points = sums[ok] / norms[ok][:, None]
    values = np.abs(f.eval_many(points))
    best = int(np.argmax(values))
    return points[best], float(values[best])

def mixed_forms(f, a, b):
    """
    T_m = <A, a^{(d-m)} (x) b^{(m)}> for m = 0..d, read off the polynomial
    s -> f(a + s b) = sum_m C(d, m) T_m s^m.
    """
    d = f.d
    nodes = lobatto_nodes(d + 1, -1.0, 1.0)
    values = f.eval_many(a[None, :] + nodes[:, None] * b[None, :]).real
    coeffs = fit_univariate(nodes, values)
    return np.array([coeffs[m] / math.comb(d, m) for m in range(d + 1)])

def complex_to_real(f, z):
    """
    Real unit x with |f(x)| >= |f(z)| / (2e)^d for a complex unit z: splits
    z = a + ib, decouples every mixed form <A, a^(d-m) b^(m)> and keeps the
    best vector (a and b themselves included). Real z comes back unchanged.
    """
    if f.kind == 'complex':
        raise CoefficientError("complex_to_real needs real coefficients")
    z = np.asarray(z)
    if z.shape != (f.n,):
        raise DimensionError("vector has shape %r, polynomial has %d variables" % (z.shape, f.n))
    a = np.real(z).astype(np.float64)
    b = np.imag(z).astype(np.float64) if np.iscomplexobj(z) else np.zeros(f.n)
    if not np.any(b):
        x = _unit(a)
        if x is None:
            x = np.zeros(f.n)
            x[0] = 1.0
        return x, abs(f.evaluate(x))

    options = []
    for v in (a, b):
        u = _unit(v)
        if u is not None:
            options.append(u)
    if f.d == 0:
        return options[0], abs(f.evaluate(options[0]))
    for m in range(f.d + 1):
        x, value = decouple(f, [a] * (f.d - m) + [b] * m)
        options.append(x)
    options = np.array(options)
    values = np.abs(f.eval_many(options))
    best = int(np.argmax(values))
    return options[best], float(values[best])

# -- Chebyshev extraction

def cheb_extract(evals, t, grid=None):
    """
    Maximize |evals(p)| over p in [0, 1] for a univariate polynomial of
    degree <= t given pointwise. The grid always contains the degree t
    Chebyshev extremal points, so the result is >= 2|c_t| / 4^t; local
    maxima are refined with a bounded scalar search.
    """
    t = int(t)
    if grid is None:
        grid = max(4 * t, 8)
    if grid < 4 * t:
        raise ValueError("grid %d is smaller than 4t=%d" % (grid, 4 * t))
    nodes = np.union1d(lobatto_nodes(grid), lobatto_nodes(t + 1) if t > 0 else np.array([0.0, 1.0]))

    def score(p):
        return abs(evals(p))

    return scan_and_refine(score, nodes, 0.0, 1.0)

# -- lifts from a multilinear part

def lift_vector(n, alpha, xbar, support, xi, k, zeta, mask):
    """
    z = Xi * b o xbar / (2 alpha + 1) + zeta o sqrt(alpha) / sqrt(|alpha|)
    with Xi the xi-th (k+1)-th root of unity, zeta_i the zeta-th
    (2 alpha_i + 1)-th root on supp(alpha), b the mask on ``support``.
    """
    z = np.zeros(n, dtype=np.complex128)
    rot = np.exp(2j * np.pi * xi / (k + 1))
    for pos, i in enumerate(support):
        if mask[pos]:
            z[i] += rot * xbar[i] / (2 * alpha[i] + 1)
    t = sum(alpha)
    if t:
        pos = 0
        for i, a in enumerate(alpha):
            if not a:
                continue
            z[i] += np.exp(2j * np.pi * zeta[pos] / (2 * a + 1)) * math.sqrt(a / float(t))
            pos += 1
    return z

def _zeta_choices(alpha):
    return list(itertools.product(*[range(2 * a + 1) for a in alpha if a]))

def weak_decoupling_candidates(f, alpha, xbar, degree=None, grid=None):
    """
    The constructive lower bound of ||f||_2 by the multilinear part
    G_{2 alpha}: every realization z of the roots-of-unity / Bernoulli lift
    of ``xbar`` together with the expectation E[f(z) Xi prod zeta] as a
    polynomial in the Bernoulli parameter p, maximized by
    :func:`cheb_extract`. Returns (list of (z, provenance), p*, |E(p*)|).

    ``degree`` lets f stand for a power g = f^r: values are then f(z)^r.
    """
    n = f.n
    alpha = MultiIndex(alpha)
    xbar = np.asarray(xbar, dtype=np.float64)
    degree = f.d if degree is None else degree
    power = degree // f.d
    t = alpha.degree
    k = degree - 2 * t
    if k < 0:
        raise DegreeError("alpha of degree %d does not fit degree %d" % (t, degree))
    support = tuple(int(i) for i in np.flatnonzero(xbar))
    zetas = _zeta_choices(alpha)
    masks = list(itertools.product((0, 1), repeat=len(support)))
    config.current().check_candidates(len(masks) * len(zetas) * (k + 1), "weak decoupling lift")

    realized = []
    vectors = []
    for mask in masks:
        for xi in range(k + 1):
            for zeta in zetas:
                z = lift_vector(n, alpha, xbar, support, xi, k, zeta, mask)
                vectors.append(z)
                realized.append((mask, xi, zeta))
    Z = np.array(vectors).reshape(len(vectors), n)
    values = f.eval_many(Z) ** power

    # E over Xi, zeta for each mask, weighted by Xi * prod zeta
    weights = []
    for mask, xi, zeta in realized:
        w = np.exp(2j * np.pi * xi / (k + 1))
        pos = 0
        for a in alpha:
            if a:
                w *= np.exp(2j * np.pi * zeta[pos] / (2 * a + 1))
                pos += 1
        weights.append(w)
    weighted = values * np.array(weights)
    per_mask = weighted.reshape(len(masks), (k + 1) * len(zetas)).mean(axis=1)
    ones = np.array([sum(m) for m in masks])
    size = len(support)

    def expectation(p):
        return np.sum(per_mask * p ** ones * (1.0 - p) ** (size - ones))

    p_star, value = cheb_extract(expectation, size, grid)

    out = []
    for z, (mask, xi, zeta) in zip(vectors, realized):
        out.append((z, {
            'alpha': list(alpha),
            'support': list(support),
            'xi': xi,
            'k': k,
            'zeta': list(zeta),
            'mask': list(mask),
        }))
    return out, p_star, value

# -- candidate sets

def _check_level(degree, q, multiple):
    if q is None or q < 1 or q % multiple:
        raise DegreeError("q=%r must be a positive multiple of %d for degree %d" % (q, multiple, degree))
    if q % 2:
        raise DegreeError("q=%d must be even" % q)

def _quadratic_candidates(f, method):
    vec, value = quad_argmax(np.asarray(quadratic_matrix(f.to_float()), dtype=np.float64))
    return [Candidate(vec, {'method': method, 'kind': 'quadratic'})]

def _count_nnc(n, half):
    return sum(math.comb(n + t - 1, t) * math.comb(n + half - t - 1, half - t) for t in range(half + 1))

def nnc_base(n, alpha, gamma):
    """1/sqrt(n) + sqrt(alpha)/sqrt(|alpha|) + gamma/sqrt(|gamma|), empty terms dropped."""
    b = np.full(n, 1.0 / math.sqrt(n))
    ta = sum(alpha)
    tg = sum(gamma)
    if ta:
        b = b + np.sqrt(np.array(alpha, dtype=np.float64)) / math.sqrt(ta)
    if tg:
        b = b + np.array(gamma, dtype=np.float64) / math.sqrt(tg)
    return b

@register(CANDIDATE_METHODS, 'nnc')
def nnc_candidates(f, q, scaling=UNFOLD_EXACT, capacity=None, **options):
    """
    Candidates normalize(b + w) for every base b = 1/sqrt(n) +
    sqrt(alpha)/sqrt(|alpha|) + gamma/sqrt(|gamma|), |alpha| <= qbar/2,
    |gamma| = qbar/2 - |alpha|, qbar = (d-2)q/d, with w the top eigenvector
    of the quadratic h(b) of the folded polynomial. For a non-negative
    quadratic the Perron vector is taken entrywise non-negative.
    """
    if f.kind == 'complex' or not f.is_nonnegative():
        raise CoefficientError("nnc candidates need non-negative real coefficients")
    if f.d % 2:
        raise DegreeError("nnc candidates need an even degree, got %d" % f.d)
    _check_level(f.d, q, f.d)
    capacity = config.resolve(capacity)
    if f.d == 2:
        return _quadratic_candidates(f, 'nnc')

    n = f.n
    half = (f.d - 2) * q // (2 * f.d)
    capacity.check_candidates(_count_nnc(n, half), "nnc candidate set")

    h = fold_quadratic(f, scaling, capacity)
    stack = quadratic_stack(h)

    bases = []
    provenance = []
    for alpha in compositions_up_to(n, half):
        for gamma in compositions(n, half - sum(alpha)):
            bases.append(nnc_base(n, alpha, gamma))
            provenance.append({'method': 'nnc', 'alpha': list(alpha), 'gamma': list(gamma),
                               'q': q, 'scaling': scaling})
    bases = np.array(bases).reshape(len(bases), n)
    Qs = fold_quadratic_matrices(h, bases, stack)
    ws, values = quad_argmax_many(Qs)
    log.debug("nnc: %d bases for q=%d", len(bases), q)

    out = []
    for b, w, prov in zip(bases, ws, provenance):
        out.append(Candidate(_unit(b + np.abs(w)), prov))
    return out

def _general_ys(n, half, total):
    """Enumerate (alpha, gamma, xi, zeta, mask) and the vectors y of the general set."""
    for alpha in compositions_up_to(n, half):
        alpha = MultiIndex(alpha)
        k = total - 2 * alpha.degree
        if k > n:
            continue
        zetas = _zeta_choices(alpha)
        for gamma in binary_vectors(n, k):
            support = tuple(i for i, g in enumerate(gamma) if g)
            xbar = np.array(gamma, dtype=np.float64)
            if k:
                xbar = xbar / math.sqrt(k)
            for xi in range(k + 1):
                for zeta in zetas:
                    for mask in itertools.product((0, 1), repeat=k):
                        yield alpha, gamma, xbar, support, xi, k, zeta, mask

def _count_general(n, half, total):
    count = 0
    for alpha in compositions_up_to(n, half):
        k = total - 2 * sum(alpha)
        if k > n:
            continue
        zetas = 1
        for a in alpha:
            zetas *= 2 * a + 1
        count += math.comb(n, k) * (k + 1) * zetas * 2 ** k
    return count

def _bivariate(f, Y, W):
    """
    Coefficients P[y, m] with f(c1 y + c2 w) = sum_m P[y, m] c1^(d-m) c2^m,
    from f(y + s w) at d+1 nodes.
    """
    d = f.d
    nodes = lobatto_nodes(d + 1, -1.0, 1.0)
    points = Y[:, None, :] + nodes[None, :, None] * W[:, None, :]
    values = f.eval_many(points.reshape(-1, f.n)).reshape(Y.shape[0], d + 1)
    vander = np.vander(nodes, d + 1, increasing=True)
    return np.linalg.solve(vander, values.T).T

def _combination_score(coeffs, yy, ww, yw, d, c1, c2):
    c1 = np.asarray(c1, dtype=np.float64)
    c2 = np.asarray(c2, dtype=np.float64)
    m = np.arange(d + 1)
    powers = c1[..., None] ** (d - m) * c2[..., None] ** m
    num = np.abs(powers.dot(coeffs))
    norm2 = c1 ** 2 * yy + c2 ** 2 * ww + 2.0 * c1 * c2 * yw
    with np.errstate(divide='ignore', invalid='ignore'):
        score = np.where(norm2 > EPSILON, num / np.maximum(norm2, EPSILON) ** (d / 2.0), 0.0)
    return score

def _refine_combination(d, coeffs, y, w, c_grid, scores=None):
    r1 = max(d - 2, 1)
    g1 = np.linspace(-r1, r1, c_grid)
    g2 = np.linspace(-2.0, 2.0, c_grid)
    yy = float(np.vdot(y, y).real)
    ww = float(np.dot(w, w))
    yw = float(np.dot(np.real(y), w))
    if scores is None:
        C1, C2 = np.meshgrid(g1, g2, indexing='ij')
        scores = _combination_score(coeffs, yy, ww, yw, d, C1.reshape(-1), C2.reshape(-1))
    best = int(np.argmax(scores))
    i, j = divmod(best, c_grid)
    c1, c2, value = g1[i], g2[j], float(scores[best])
    h1 = g1[1] - g1[0]
    h2 = g2[1] - g2[0]

    x, v = refine_max(lambda s: float(_combination_score(coeffs, yy, ww, yw, d, s, c2)),
                      max(-r1, c1 - h1), min(r1, c1 + h1))
    if v > value:
        c1, value = x, v
    x, v = refine_max(lambda s: float(_combination_score(coeffs, yy, ww, yw, d, c1, s)),
                      max(-2.0, c2 - h2), min(2.0, c2 + h2))
    if v > value:
        c2, value = x, v
    return float(c1), float(c2), value

@register(CANDIDATE_METHODS, 'general')
def general_candidates(f, q, c_grid=DEFAULT_C_GRID, theta_grid=DEFAULT_THETA_GRID,
                       scaling=UNFOLD_EXACT, capacity=None, **options):
    """
    For every y = Xi gamma o b / ((2 alpha + 1) sqrt|gamma|) + sqrt(alpha) o zeta
    / sqrt|alpha| (|alpha| <= qbar/2, gamma multilinear of degree
    qbar - 2|alpha|): w maximizes |h(y)(x)| over real unit x, the pair
    (c1, c2) maximizes |f| along c1 y + c2 w, and the complex combination
    is turned into a real candidate with :func:`complex_to_real`.
    """
    if f.kind == 'complex':
        raise CoefficientError("general candidates need real coefficients")
    if f.d % 2:
        raise DegreeError("general candidates need an even degree, got %d" % f.d)
    _check_level(f.d, q, 2 * f.d)
    capacity = config.resolve(capacity)
    if f.d == 2:
        return _quadratic_candidates(f, 'general')

    n = f.n
    total = (f.d - 2) * q // f.d
    half = total // 2
    capacity.check_candidates(_count_general(n, half, total), "general candidate set")

    h = fold_quadratic(f, scaling, capacity)
    stack = quadratic_stack(h)

    ys = []
    provenance = []
    for alpha, gamma, xbar, support, xi, k, zeta, mask in _general_ys(n, half, total):
        y = lift_vector(n, alpha, xbar, support, xi, k, zeta, mask)
        if np.linalg.norm(y) <= EPSILON:
            continue
        ys.append(y)
        provenance.append({'method': 'general', 'alpha': list(alpha), 'gamma': list(gamma),
                           'xi': xi, 'zeta': list(zeta), 'mask': list(mask), 'q': q,
                           'c_grid': c_grid, 'theta_grid': theta_grid, 'scaling': scaling})
    if not ys:
        return []
    Y = np.array(ys).reshape(len(ys), n)
    Qs = fold_quadratic_matrices(h, Y, stack)
    W, _ = complex_quad_argmax_many(Qs, theta_grid)
    coeffs = _bivariate(f, Y, W)
    log.debug("general: %d vectors y for q=%d", len(ys), q)

    out = []
    for y, w, c, prov in zip(Y, W, coeffs, provenance):
        c1, c2, score = _refine_combination(f.d, c, y, w, c_grid)
        prov['c1'] = c1
        prov['c2'] = c2
        v = _unit(c1 * y + c2 * w)
        if v is None:
            continue
        x, value = complex_to_real(f, v)
        out.append(Candidate(x, prov))
    return out

@register(CANDIDATE_METHODS, 'sparse')
def sparse_candidates(f, q, witnesses=DEFAULT_WITNESSES, capacity=None, **options):
    """
    Candidates for polynomials with few terms: the maximizer sqrt(beta)/sqrt|beta|
    of every monomial of f, and for every multilinear part of g = f^{q/d}
    the lift of its largest monomials gamma/sqrt|gamma| (see
    :func:`weak_decoupling_candidates`), best realization turned real.
    """
    if f.kind == 'complex':
        raise CoefficientError("sparse candidates need real coefficients")
    _check_level(f.d, q, f.d)
    capacity = config.resolve(capacity)
    n = f.n
    out = []

    for beta, coeff in f.items():
        x = _unit(np.sqrt(np.array(beta, dtype=np.float64)))
        if x is not None:
            out.append(Candidate(x, {'method': 'sparse', 'monomial': list(beta), 'q': q}))

    power = q // f.d
    g = pow(f.to_float(), power, capacity) if power > 1 else f.to_float()
    parts = multilinear_parts(g)
    with config.override(capacity):
        for alpha, part in parts.items():
            ranked = sorted(part.items(), key=lambda item: -abs(item[1]))
            for gamma, coeff in ranked[:witnesses]:
                k = gamma.degree
                xbar = np.array(gamma, dtype=np.float64)
                if k:
                    xbar = xbar / math.sqrt(k)
                lifts, p_star, expected = weak_decoupling_candidates(f, alpha, xbar, degree=q)
                Z = np.array([z for z, prov in lifts]).reshape(len(lifts), n)
                norms = np.linalg.norm(Z, axis=1)
                ok = norms > EPSILON
                if not ok.any():
                    continue
                scores = np.zeros(len(lifts))
                scores[ok] = np.abs(f.eval_many(Z[ok] / norms[ok][:, None]))
                best = int(np.argmax(scores))
                z, prov = lifts[best]
                prov = dict(prov)
                prov.update({'method': 'sparse', 'witness': list(gamma), 'p': p_star,
                             'expectation': expected, 'q': q})
                x, value = complex_to_real(f, z / norms[best])
                out.append(Candidate(x, prov))
    log.debug("sparse: %d candidates for q=%d", len(out), q)
    return out

def replay(f, provenance):
    """Regenerate a candidate vector from its provenance record."""
    method = provenance['method']
    q = provenance.get('q')
    if provenance.get('kind') == 'quadratic':
        return _quadratic_candidates(f, method)[0].vector
    n = f.n
    if method == 'nnc':
        h = fold_quadratic(f, provenance['scaling'])
        b = nnc_base(n, provenance['alpha'], provenance['gamma'])
        ws, values = quad_argmax_many(fold_quadratic_matrices(h, b[None, :]))
        return _unit(b + np.abs(ws[0]))
    if method == 'general':
        alpha = MultiIndex(provenance['alpha'])
        gamma = provenance['gamma']
        k = sum(gamma)
        support = tuple(i for i, g in enumerate(gamma) if g)
        xbar = np.array(gamma, dtype=np.float64)
        if k:
            xbar = xbar / math.sqrt(k)
        y = lift_vector(n, alpha, xbar, support, provenance['xi'], k, provenance['zeta'], provenance['mask'])
        h = fold_quadratic(f, provenance['scaling'])
        W, _ = complex_quad_argmax_many(fold_quadratic_matrices(h, y[None, :]), provenance['theta_grid'])
        v = _unit(provenance['c1'] * y + provenance['c2'] * W[0])
        return complex_to_real(f, v)[0]
    if method == 'sparse':
        if 'monomial' in provenance:
            return _unit(np.sqrt(np.array(provenance['monomial'], dtype=np.float64)))
        alpha = MultiIndex(provenance['alpha'])
        witness = provenance['witness']
        k = sum(witness)
        xbar = np.array(witness, dtype=np.float64)
        if k:
            xbar = xbar / math.sqrt(k)
        z = lift_vector(n, alpha, xbar, tuple(provenance['support']), provenance['xi'],
                        provenance['k'], provenance['zeta'], provenance['mask'])
        return complex_to_real(f, _unit(z))[0]
    raise ValueError("unknown candidate method %r" % (method,))

def best_candidate(f, cands):
    """The candidate with the largest |f(x)|; the first one wins ties."""
    cands = list(cands)
    if not cands:
        raise ValueError("empty candidate set")
    X = np.array([c.vector for c in cands], dtype=np.float64).reshape(len(cands), f.n)
    values = np.abs(f.eval_many(X))
    best = int(np.argmax(values))
    x = X[best]
    return OptReport(x, abs(f.evaluate(x)), candidates_evaluated=len(cands),
                     provenance=cands[best].provenance)

def level_multiple(method, d):
    """q must be a multiple of this for the method on a degree d polynomial."""
    if method == 'general':
        return 2 * d
    return d

def default_level(method, d):
    return level_multiple(method, d)

def choose_method(f, sparse_threshold=None):
    """
    nnc for non-negative coefficients, sparse for fewer than
    ``sparse_threshold`` monomials (default n), general otherwise. With
    m < n terms the sparse ratio sqrt(m/q) stays below sqrt(n/q), which is
    no worse than the general (n/q)^(d/2-1) once d >= 4 and n >= q.
    """
    if f.is_nonnegative():
        return 'nnc'
    threshold = f.n if sparse_threshold is None else sparse_threshold
    if threshold < 0:
        raise ValueError("sparse threshold must be >= 0, got %r" % (threshold,))
    if len(f) < threshold:
        return 'sparse'
    return 'general'

def optimize(f, q=None, method='auto', c_grid=DEFAULT_C_GRID, theta_grid=DEFAULT_THETA_GRID,
             sparse_threshold=None, scaling=UNFOLD_EXACT, capacity=None):
    """
    Run a candidate-set algorithm and compare its best vector with the
    powered upper estimate. Odd degree polynomials are handled through f^2,
    which has the same maximizers of |f|; q then refers to f^2.
    """
    if f.kind == 'complex':
        raise CoefficientError("optimize needs real coefficients")
    if method != 'auto' and method not in CANDIDATE_METHODS:
        raise ValueError("unknown method %r" % (method,))
    capacity = config.resolve(capacity)
    f = f.to_float()

    squared = f.d % 2 == 1
    degree = 2 * f.d if squared else f.d
    if method == 'auto':
        method = choose_method(f, sparse_threshold)
    if q is None:
        q = default_level(method, degree)
    _check_level(degree, q, level_multiple(method, degree))

    if f.is_zero():
        x = np.zeros(f.n)
        x[0] = 1.0
        return OptReport(x, 0.0, UpperEstimate(0.0, 'eig_sos_matrix'), method=method, q=q,
                         candidates_evaluated=1, provenance={'method': method, 'kind': 'zero'})

    target = pow(f, 2, capacity) if squared else f
    log.info("optimize: method=%s q=%d n=%d d=%d terms=%d%s", method, q, f.n, f.d, len(f),
             " (squared)" if squared else "")

    with config.override(capacity):
        cands = CANDIDATE_METHODS[method](target, q, c_grid=c_grid, theta_grid=theta_grid,
                                          scaling=scaling, capacity=capacity)
        upper = powered_upper_estimate(target, q, method, capacity)
    if squared:
        upper = UpperEstimate(math.sqrt(upper.value), upper.method, upper.witness,
                              squared=True, **upper.details)

    report = best_candidate(f, cands)
    report.upper = upper
    report.method = method
    report.q = q
    report.ratio = upper.value / report.value if report.value > 0 else None
    log.info("optimize: value=%g upper=%g", report.value, upper.value)
    return report
