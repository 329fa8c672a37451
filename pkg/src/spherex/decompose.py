from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )

import logging
from fractions import Fraction

import numpy as np

from . import config
from .poly import (
    MultiIndex,
    HomogPoly,
    orbit_size,
    sos_matrix,
    multiply,
    quadratic_matrix,
    result_kind,
    )
from .utils import tuple_index
from .exceptions import DegreeError, DimensionError

log = logging.getLogger(__name__)

UNFOLD_EXACT = 'unfold_exact'
ORBIT_SCALED = 'orbit_scaled'
SCALINGS = (UNFOLD_EXACT, ORBIT_SCALED)
SCALING_ALIASES = {'paper_scaled': ORBIT_SCALED}

def sub_indices(beta, k):
    """Every alpha <= beta (componentwise) with |alpha| == k."""
    beta = tuple(beta)

    def walk(i, remaining):
        if i == len(beta):
            if remaining == 0:
                yield ()
            return
        for a in range(min(beta[i], remaining), -1, -1):
            for rest in walk(i + 1, remaining - a):
                yield (a,) + rest

    for alpha in walk(0, k):
        yield MultiIndex(alpha)

class MultilinearParts(object):
    """
    The split f = sum_alpha x^{2 alpha} G_{2 alpha}(x) with every G_{2 alpha}
    multilinear of degree d - 2|alpha|.
    """
    __slots__ = ('n', 'd', 'parts')

    def __init__(self, n, d, parts):
        self.n = n
        self.d = d
        self.parts = dict(parts)
        for alpha, part in self.parts.items():
            if part.d != d - 2 * alpha.degree:
                raise DegreeError("part %r has degree %d, expected %d" % (tuple(alpha), part.d, d - 2 * alpha.degree))
            if not part.is_multilinear():
                raise ValueError("part %r is not multilinear" % (tuple(alpha),))

    def __getitem__(self, alpha):
        return self.parts[MultiIndex(alpha)]

    def __contains__(self, alpha):
        return MultiIndex(alpha) in self.parts

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def items(self):
        return self.parts.items()

    def keys(self):
        return self.parts.keys()

    def evaluate(self, x):
        """sum_alpha x^{2 alpha} G_{2 alpha}(x)"""
        x = np.asarray(x)
        total = 0
        for alpha, part in self.parts.items():
            total = total + np.prod(x ** (2 * np.array(alpha))) * part.evaluate(x)
        return total

def multilinear_parts(f):
    grouped = {}
    for beta, coeff in f.items():
        alpha, gamma = beta.halves()
        grouped.setdefault(alpha, {})[gamma] = coeff
    parts = {}
    for alpha in sorted(grouped):
        parts[alpha] = HomogPoly(f.n, f.d - 2 * alpha.degree, grouped[alpha], kind=f.kind)
    return MultilinearParts(f.n, f.d, parts)

def reconstruct(parts, kind=None):
    """Inverse of :func:`multilinear_parts`."""
    terms = {}
    for alpha, part in parts.items():
        for gamma, coeff in part.items():
            terms[alpha * 2 + gamma] = coeff
    if kind is None:
        kinds = [p.kind for p in parts.parts.values()]
        kind = kinds[0] if kinds else 'real'
    return HomogPoly(parts.n, parts.d, terms, kind=kind)

class FoldedPoly(object):
    """
    Degree (d1, d2) folded polynomial sum_beta h_beta(x) x^beta: the
    coefficient of each degree d1 monomial is a degree d2 polynomial (fold).
    """
    __slots__ = ('n', 'd1', 'd2', 'folds')

    def __init__(self, n, d1, d2, folds):
        self.n = n
        self.d1 = d1
        self.d2 = d2
        clean = {}
        for beta, fold in dict(folds).items():
            beta = MultiIndex(beta)
            if len(beta) != n:
                raise DimensionError("monomial %r has length %d, expected %d" % (tuple(beta), len(beta), n))
            if beta.degree != d1:
                raise DegreeError("monomial %r has degree %d, expected %d" % (tuple(beta), beta.degree, d1))
            if fold.n != n or fold.d != d2:
                raise DegreeError("fold at %r is %r, expected n=%d d=%d" % (tuple(beta), fold, n, d2))
            if fold.is_zero():
                continue
            clean[beta] = fold
        self.folds = dict((beta, clean[beta]) for beta in sorted(clean, reverse=True))

    @property
    def degree(self):
        return self.d1 + self.d2

    @property
    def kind(self):
        kind = 'real'
        for i, fold in enumerate(self.folds.values()):
            kind = fold.kind if i == 0 else result_kind(kind, fold.kind)
        return kind

    def items(self):
        return self.folds.items()

    def __len__(self):
        return len(self.folds)

    def fold(self, beta):
        beta = MultiIndex(beta)
        if beta in self.folds:
            return self.folds[beta]
        return HomogPoly.zero(self.n, self.d2)

    def evaluate(self, x):
        return unfold(self).evaluate(x)

    def specialize(self, y):
        """The degree d2 polynomial sum_beta y^beta h_beta obtained by fixing the monomials at y."""
        y = np.asarray(y)
        result = None
        for beta, fold in self.folds.items():
            weight = np.prod(y ** np.array(beta))
            term = fold.scale(complex(weight) if np.iscomplexobj(y) else float(weight))
            result = term if result is None else result + term
        if result is None:
            return HomogPoly.zero(self.n, self.d2)
        return result

    def __eq__(self, other):
        if not isinstance(other, FoldedPoly):
            return NotImplemented
        return (self.n, self.d1, self.d2) == (other.n, other.d1, other.d2) and self.folds == other.folds

    __hash__ = None

    def __repr__(self):
        return "FoldedPoly(n=%d, d1=%d, d2=%d, folds=%d)" % (self.n, self.d1, self.d2, len(self.folds))

def unfold(h):
    terms = {}
    kind = h.kind
    for beta, fold in h.items():
        for gamma, coeff in fold.items():
            key = beta + gamma
            terms[key] = terms.get(key, 0) + coeff
    return HomogPoly(h.n, h.degree, terms, kind=kind)

def collapse(f, k):
    """
    The k-collapse g_gamma = sum_{|alpha| = k} f_{gamma + alpha}. Folded
    input collapses the monomial part and sums the folds.
    """
    if isinstance(f, FoldedPoly):
        if k < 0 or k > f.d1:
            raise DegreeError("cannot collapse %d from monomial degree %d" % (k, f.d1))
        folds = {}
        for beta, fold in f.items():
            for alpha in sub_indices(beta, k):
                key = beta - alpha
                folds[key] = folds[key] + fold if key in folds else fold
        return FoldedPoly(f.n, f.d1 - k, f.d2, folds)

    if k < 0 or k > f.d:
        raise DegreeError("cannot collapse %d from degree %d" % (k, f.d))
    terms = {}
    for beta, coeff in f.items():
        for alpha in sub_indices(beta, k):
            key = beta - alpha
            terms[key] = terms.get(key, 0) + coeff
    return HomogPoly(f.n, f.d - k, terms, kind=f.kind)

def fold_block(M, beta):
    """
    The n x n block M[(I,.),(J,.)] of a SoS-symmetric matrix for the
    lexicographically smallest split I, J of beta.
    """
    n = M.n
    indices = MultiIndex(beta).indices()
    half = len(indices) // 2
    row = tuple_index(indices[:half], n) * n
    col = tuple_index(indices[half:], n) * n
    return M.entries[row:row + n, col:col + n]

def fold_quadratic(f, scaling=UNFOLD_EXACT, capacity=None):
    """
    The (d-2, 2) folded polynomial whose fold at beta is the quadratic form
    of the matching n x n block of the SoS-symmetric matrix of f, scaled by
    |orbit(beta)| (unfold_exact, so that unfold gives f back) or by
    1/|orbit(beta)| (orbit_scaled, also accepted as paper_scaled).
    """
    if f.d % 2 or f.d < 4:
        raise DegreeError("fold_quadratic needs an even degree >= 4, got %d" % f.d)
    scaling = SCALING_ALIASES.get(scaling, scaling)
    if scaling not in SCALINGS:
        raise ValueError("unknown fold scaling %r" % (scaling,))
    M = sos_matrix(f, capacity)

    betas = set()
    for alpha in f:
        for delta in sub_indices(alpha, 2):
            betas.add(alpha - delta)

    kind = 'exact' if f.kind == 'exact' else 'real'
    folds = {}
    for beta in sorted(betas, reverse=True):
        block = fold_block(M, beta)
        size = orbit_size(beta)
        fold = HomogPoly.from_quadratic(block, kind=kind)
        if scaling == UNFOLD_EXACT:
            fold = fold.scale(size)
        elif kind == 'exact':
            fold = fold.scale(Fraction(1, size))
        else:
            fold = fold.scale(1.0 / size)
        folds[beta] = fold
    log.debug("folded %r into %d quadratic folds (%s)", f, len(folds), scaling)
    return FoldedPoly(f.n, f.d - 2, 2, folds)

def folded_multiply(h, g, capacity=None):
    if h.n != g.n:
        raise DimensionError("variable count mismatch %d != %d" % (h.n, g.n))
    capacity = config.resolve(capacity)
    folds = {}
    for a, fa in h.items():
        for b, fb in g.items():
            key = a + b
            prod = multiply(fa, fb, capacity)
            folds[key] = folds[key] + prod if key in folds else prod
        capacity.check_terms(sum(len(p) for p in folds.values()), "folded product")
    return FoldedPoly(h.n, h.d1 + g.d1, h.d2 + g.d2, folds)

def folded_power(h, r, capacity=None):
    """Folds multiplied as coefficients: unfold(h^r) == unfold(h)^r."""
    if int(r) != r or r < 1:
        raise ValueError("power must be a positive integer, got %r" % (r,))
    result = h
    for i in range(int(r) - 1):
        result = folded_multiply(result, h, capacity)
    return result

def folded_multilinear_parts(h):
    """
    alpha -> S_{2 alpha} with folds (S_{2 alpha})_gamma = h_{2 alpha + gamma},
    gamma multilinear.
    """
    grouped = {}
    for beta, fold in h.items():
        alpha, gamma = beta.halves()
        grouped.setdefault(alpha, {})[gamma] = fold
    parts = {}
    for alpha in sorted(grouped):
        parts[alpha] = FoldedPoly(h.n, h.d1 - 2 * alpha.degree, h.d2, grouped[alpha])
    return parts

def reconstruct_folded(parts, n, d1, d2):
    folds = {}
    for alpha, part in parts.items():
        for gamma, fold in part.items():
            folds[alpha * 2 + gamma] = fold
    return FoldedPoly(n, d1, d2, folds)

def quadratic_stack(h):
    """
    (exponents B x n, matrices B x n x n) for a (d1, 2) folded polynomial,
    the raw material of :func:`fold_quadratic_matrices`.
    """
    if h.d2 != 2:
        raise DegreeError("quadratic folds expected, got fold degree %d" % h.d2)
    betas = list(h.folds.keys())
    exps = np.array(betas, dtype=np.int64).reshape(len(betas), h.n)
    stack = np.zeros((len(betas), h.n, h.n), dtype=np.float64)
    for i, beta in enumerate(betas):
        stack[i] = np.asarray(quadratic_matrix(h.folds[beta].to_float()), dtype=np.float64)
    return exps, stack

def fold_quadratic_matrices(h, Y, stack=None):
    """
    The symmetric (complex for complex Y) matrices of the quadratics
    x -> h(y)(x) for every row y of Y, shape (len(Y), n, n).
    """
    Y = np.asarray(Y)
    if Y.ndim == 1:
        Y = Y[None, :]
    exps, mats = stack if stack is not None else quadratic_stack(h)
    if exps.shape[0] == 0:
        return np.zeros((Y.shape[0], h.n, h.n), dtype=np.result_type(Y, np.float64))
    weights = np.prod(Y[:, None, :] ** exps[None, :, :], axis=2)
    return np.einsum('yb,bij->yij', weights, mats)
