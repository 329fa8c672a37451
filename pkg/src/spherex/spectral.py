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
import scipy.linalg

from . import config
from . import exact
from .poly import (
    SymMatRep,
    sos_matrix,
    orbit_size,
    is_symmetric,
    pow,
    )
from .decompose import multilinear_parts
from .exceptions import (
    SymmetryError,
    DegreeError,
    CoefficientError,
    RepresentationError,
    DimensionError,
    )

log = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-10

EIG_SOS_MATRIX = 'eig_sos_matrix'
GERSHGORIN = 'gershgorin'
ROWSUM = 'rowsum'
FROBENIUS = 'frobenius'
BLOCK_MULTILINEAR = 'block_multilinear'

METHODS = (EIG_SOS_MATRIX, GERSHGORIN, ROWSUM, FROBENIUS, BLOCK_MULTILINEAR)

CLASSES = ('general', 'nnc', 'sparse')

class UpperEstimate(object):
    """
    A certified value >= sup over the unit sphere of f(x), with the method
    that produced it. ``witness`` optionally carries the matrix
    representation behind the number.
    """
    __slots__ = ('value', 'method', 'witness', 'details')

    def __init__(self, value, method, witness=None, **details):
        if method not in METHODS:
            raise ValueError("unknown estimate method %r" % (method,))
        self.value = float(value)
        self.method = method
        self.witness = witness
        self.details = details

    def as_dict(self):
        data = {'value': self.value, 'method': self.method}
        for key in sorted(self.details):
            data[key] = self.details[key]
        return data

    def __repr__(self):
        return "UpperEstimate(%s=%g)" % (self.method, self.value)

def as_array(M):
    if isinstance(M, SymMatRep):
        M = M.entries
    M = np.asarray(M)
    if M.dtype == object:
        M = exact.to_float_array(M)
    return M

def check_symmetric(M, tol=SYMMETRY_TOL):
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError("expected a square matrix, got shape %r" % (M.shape,))
    if not is_symmetric(M, tol):
        raise SymmetryError("matrix is not symmetric within %g" % tol)

def eigensystem(M):
    M = as_array(M)
    check_symmetric(M)
    if M.shape[0] == 0:
        raise DimensionError("empty matrix")
    return scipy.linalg.eigh(M)

def lambda_max(M):
    """(largest eigenvalue, unit eigenvector) of a dense symmetric matrix."""
    w, v = eigensystem(M)
    return float(w[-1]), v[:, -1]

def lambda_min(M):
    w, v = eigensystem(M)
    return float(w[0]), v[:, 0]

def quadratic_norm(M):
    """
    max(|lambda_max|, |lambda_min|) with its eigenvector; an exact tie goes
    to lambda_max.
    """
    w, v = eigensystem(M)
    if abs(w[-1]) >= abs(w[0]):
        return float(abs(w[-1])), v[:, -1]
    return float(abs(w[0])), v[:, 0]

def is_psd(M, tol=1e-8):
    """min eigenvalue >= -tol * max(1, spectral norm)"""
    M = as_array(M)
    check_symmetric(M, tol=max(SYMMETRY_TOL, tol))
    if M.size == 0:
        return True
    w = scipy.linalg.eigvalsh((M + M.T) / 2.0)
    scale = max(1.0, float(np.max(np.abs(w))))
    return bool(w[0] >= -tol * scale)

def min_eigenvalue(M):
    M = as_array(M)
    return float(scipy.linalg.eigvalsh((M + M.T) / 2.0)[0])

def singular_values(M):
    M = as_array(M)
    if M.size == 0:
        return np.zeros(0)
    return scipy.linalg.svdvals(M)

def spectral_norm(M):
    s = singular_values(M)
    return float(s[0]) if s.size else 0.0

def frobenius(M):
    M = as_array(M)
    return float(np.sqrt(np.sum(np.abs(M) ** 2)))

def schatten1(M):
    return float(np.sum(singular_values(M)))

def block_multilinear_rep(f, part_reps):
    """
    Representation of f assembled from representations of its multilinear
    parts: for each alpha and each tuple I in orbit(alpha) the diagonal
    block at prefix I holds M_{G_{2 alpha}} / |orbit(alpha)|.
    """
    if f.d % 2:
        raise DegreeError("block representation needs an even degree, got %d" % f.d)
    parts = multilinear_parts(f)
    wanted = set(parts.keys())
    given = set(part_reps.keys())
    if wanted != given:
        raise RepresentationError("part representations for %r do not match parts %r"
                                  % (sorted(map(tuple, given)), sorted(map(tuple, wanted))))
    n = f.n
    half = f.d // 2
    size = n ** half
    config.current().check_entries(size * size, "block representation")
    entries = np.zeros((size, size))
    for alpha, rep in part_reps.items():
        k = half - alpha.degree
        if rep.n != n or rep.k != k:
            raise RepresentationError("part %r needs a representation with n=%d k=%d, got %r"
                                      % (tuple(alpha), n, k, rep))
        block = as_array(rep) / orbit_size(alpha)
        width = n ** k
        for prefix in _orbit_tuples(alpha):
            start = 0
            for i in prefix:
                start = start * n + i
            start *= width
            entries[start:start + width, start:start + width] += block
    return SymMatRep(n, half, entries, sos_symmetric=False)

def _orbit_tuples(alpha):
    base = alpha.indices()
    return sorted(set(itertools.permutations(base)))

def block_upper_bound(f):
    """
    UpperEstimate from the block representation built on the SoS-symmetric
    matrices of the parts; ``bound`` is the triangle-inequality ceiling
    (1 + d/2) * max_alpha max(0, lambda_max(part)) / |orbit(alpha)|.
    """
    parts = multilinear_parts(f)
    reps = dict((alpha, sos_matrix(part)) for alpha, part in parts.items())
    if not reps:
        return UpperEstimate(0.0, BLOCK_MULTILINEAR, bound=0.0)
    M = block_multilinear_rep(f, reps)
    value, vec = lambda_max(M)
    worst = max(max(0.0, lambda_max(rep)[0]) / orbit_size(alpha) for alpha, rep in reps.items())
    return UpperEstimate(value, BLOCK_MULTILINEAR, witness=M, bound=(1 + f.d / 2.0) * worst)

def _require_multilinear(f, what):
    if not f.is_multilinear():
        raise CoefficientError("%s needs a multilinear polynomial" % what)

def gershgorin_bound(f):
    """n^{d/2} * max|f_beta| / d! for multilinear f."""
    _require_multilinear(f, "gershgorin bound")
    if f.d % 2:
        raise DegreeError("gershgorin bound needs an even degree, got %d" % f.d)
    value = f.n ** (f.d // 2) * f.max_abs_coeff() / math.factorial(f.d)
    return UpperEstimate(value, GERSHGORIN)

def rowsum_bound(f):
    """Largest row sum of the SoS-symmetric matrix of a non-negative multilinear f."""
    _require_multilinear(f, "row sum bound")
    if not f.is_nonnegative() or f.kind == 'complex':
        raise CoefficientError("row sum bound needs non-negative coefficients")
    if f.d % 2:
        raise DegreeError("row sum bound needs an even degree, got %d" % f.d)
    if f.is_zero():
        return UpperEstimate(0.0, ROWSUM)
    M = as_array(sos_matrix(f))
    sums = M.sum(axis=1)
    row = int(np.argmax(sums))
    return UpperEstimate(float(sums[row]), ROWSUM, row=row)

def frobenius_sparse_bound(f):
    """sqrt(sum f_beta^2 / d!), the Frobenius norm of M_f for multilinear f."""
    _require_multilinear(f, "frobenius bound")
    total = sum(abs(complex(c)) ** 2 for alpha, c in f.items())
    return UpperEstimate(math.sqrt(total / math.factorial(f.d)), FROBENIUS)

def sos_frobenius(f):
    """||M_f||_F without building M_f: each class beta has |orbit(beta)| equal entries."""
    total = 0.0
    for alpha, c in f.items():
        total += abs(complex(c)) ** 2 / orbit_size(alpha)
    return math.sqrt(total)

def eig_upper_bound(f):
    """lambda_max of the SoS-symmetric matrix of an even degree f."""
    if f.d % 2:
        raise DegreeError("eigenvalue bound needs an even degree, got %d" % f.d)
    if f.is_zero():
        return UpperEstimate(0.0, EIG_SOS_MATRIX)
    M = sos_matrix(f)
    value, vec = lambda_max(M)
    return UpperEstimate(value, EIG_SOS_MATRIX, witness=M)

def powered_upper_estimate(f, q, cls='general', capacity=None):
    """
    Upper estimate from the SoS-symmetric matrix of g = f^{q/d}, raised to
    d/q. For the nnc class lambda_max is used; for the general class
    lambda_max when q/d is even (g >= 0) and the larger of |lambda_max|,
    |lambda_min| otherwise; for the sparse class the Frobenius norm of M_g.
    Every variant is >= ||f||_2.
    """
    if cls not in CLASSES:
        raise ValueError("unknown polynomial class %r" % (cls,))
    if q < 1 or q % f.d:
        raise DegreeError("q=%d must be a positive multiple of d=%d" % (q, f.d))
    if q % 2:
        raise DegreeError("q=%d must be even" % q)
    capacity = config.resolve(capacity)
    r = q // f.d
    if cls != 'sparse':
        capacity.check_entries(f.n ** q, "powered SoS-symmetric matrix")

    if f.is_zero():
        method = FROBENIUS if cls == 'sparse' else EIG_SOS_MATRIX
        return UpperEstimate(0.0, method, q=q, power=r)

    g = pow(f.to_float(), r, capacity) if r > 1 else f.to_float()

    if cls == 'sparse':
        value = sos_frobenius(g) ** (1.0 / r)
        return UpperEstimate(value, FROBENIUS, q=q, power=r)

    M = sos_matrix(g, capacity)
    if cls == 'nnc' or r % 2 == 0:
        raw, vec = lambda_max(M)
    else:
        raw, vec = quadratic_norm(M)
    raw = max(0.0, raw)
    log.debug("powered estimate q=%d: lambda=%g", q, raw)
    return UpperEstimate(raw ** (1.0 / r), EIG_SOS_MATRIX, witness=M, q=q, power=r, raw=raw)

def all_bounds(f, q=None):
    """
    Every upper estimate that applies to f, as name -> (applicable,
    UpperEstimate or None).
    """
    out = {}

    def attempt(name, func):
        try:
            out[name] = (True, func())
        except (CoefficientError, DegreeError) as e:
            log.debug("%s not applicable: %s", name, e)
            out[name] = (False, None)

    attempt(GERSHGORIN, lambda: gershgorin_bound(f))
    attempt(ROWSUM, lambda: rowsum_bound(f))
    attempt(FROBENIUS, lambda: frobenius_sparse_bound(f))
    attempt(EIG_SOS_MATRIX, lambda: eig_upper_bound(f))
    attempt(BLOCK_MULTILINEAR, lambda: block_upper_bound(f))
    if q is not None:
        cls = 'nnc' if f.is_nonnegative() and f.kind != 'complex' else 'general'
        attempt('powered', lambda: powered_upper_estimate(f, q, cls))
    return out