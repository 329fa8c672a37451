from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )

import numbers
import logging
from fractions import Fraction

import numpy as np

from . import config
from . import exact
from .utils import (
    multinomial,
    tuple_exponents,
    exponent_codes,
    )
from .exceptions import (
    DimensionError,
    DegreeError,
    SymmetryError,
    CoefficientError,
    )

log = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-10

KINDS = ('real', 'complex', 'exact')

# evaluation works in blocks of at most this many (point, term, variable) cells
EVAL_BLOCK = 1 << 22

class MultiIndex(tuple):
    """
    Exponent vector alpha in N^n. Arithmetic is componentwise, so ``a + b``
    is the exponent vector of x^a * x^b, not a tuple concatenation.
    """
    __slots__ = ()

    def __new__(cls, exponents):
        values = []
        for e in exponents:
            if int(e) != e or e < 0:
                raise ValueError("exponents must be non-negative integers: %r" % (exponents,))
            values.append(int(e))
        return super(MultiIndex, cls).__new__(cls, values)

    @classmethod
    def zero(cls, n):
        return cls([0] * n)

    @classmethod
    def unit(cls, n, i):
        alpha = [0] * n
        alpha[i] = 1
        return cls(alpha)

    @classmethod
    def from_indices(cls, indices, n):
        """alpha(I): the multiplicity of each variable in the tuple I."""
        alpha = [0] * n
        for i in indices:
            alpha[i] += 1
        return cls(alpha)

    @property
    def n(self):
        return len(self)

    @property
    def degree(self):
        return sum(self)

    def __add__(self, other):
        if len(other) != len(self):
            raise DimensionError("multi-index length mismatch %d != %d" % (len(self), len(other)))
        return MultiIndex([a + b for a, b in zip(self, other)])

    def __sub__(self, other):
        if len(other) != len(self):
            raise DimensionError("multi-index length mismatch %d != %d" % (len(self), len(other)))
        return MultiIndex([a - b for a, b in zip(self, other)])

    def __mul__(self, r):
        return MultiIndex([a * r for a in self])

    __rmul__ = __mul__

    def dominates(self, other):
        """self >= other componentwise"""
        return all(a >= b for a, b in zip(self, other))

    def is_multilinear(self):
        return all(a <= 1 for a in self)

    def support(self):
        return tuple(i for i, a in enumerate(self) if a)

    def halves(self):
        """(floor(alpha/2), alpha mod 2), the even/odd split."""
        return MultiIndex([a // 2 for a in self]), MultiIndex([a % 2 for a in self])

    def indices(self):
        """The lexicographically smallest tuple I with alpha(I) == self."""
        result = []
        for i, a in enumerate(self):
            result.extend([i] * a)
        return tuple(result)

    def __repr__(self):
        return "MultiIndex(%s)" % (tuple(self),)

def orbit_size(alpha):
    """Number of ordered tuples I in [n]^|alpha| with alpha(I) == alpha."""
    return multinomial(alpha)

def coerce_coeff(value, kind):
    if kind == 'exact':
        if isinstance(value, complex) or isinstance(value, np.complexfloating):
            raise CoefficientError("exact polynomials take rational coefficients, got %r" % (value,))
        return exact.to_fraction(value)
    if kind == 'real':
        if isinstance(value, (complex, np.complexfloating)):
            if value.imag != 0:
                raise CoefficientError("complex coefficient %r in a real polynomial" % (value,))
            value = value.real
        return float(value)
    return complex(value)

def infer_kind(values):
    kind = 'real'
    saw_fraction = False
    saw_float = False
    for v in values:
        if isinstance(v, (complex, np.complexfloating)):
            return 'complex'
        if isinstance(v, Fraction):
            saw_fraction = True
        elif isinstance(v, (float, np.floating)):
            saw_float = True
    if saw_fraction and not saw_float:
        kind = 'exact'
    return kind

def result_kind(a, b):
    if 'complex' in (a, b):
        return 'complex'
    if a == b == 'exact':
        return 'exact'
    return 'real'

class HomogPoly(object):
    """
    Homogeneous polynomial sum_alpha f_alpha x^alpha of degree d in n
    variables, stored sparsely. Instances are immutable.

    ``kind`` is one of 'real' (float coefficients), 'complex' or 'exact'
    (:class:`fractions.Fraction` coefficients). Degree 0 is accepted for
    constants such as the full-degree parts of a split.
    """
    __slots__ = ('n', 'd', 'kind', '_terms', '_arrays')

    def __init__(self, n, d, terms=None, kind=None):
        if int(n) != n or n < 1:
            raise DimensionError("variable count must be >= 1, got %r" % (n,))
        if int(d) != d or d < 0:
            raise DegreeError("degree must be >= 0, got %r" % (d,))
        self.n = int(n)
        self.d = int(d)

        terms = dict(terms or {})
        if kind is None:
            kind = infer_kind(terms.values())
        if kind not in KINDS:
            raise ValueError("unknown coefficient kind %r" % (kind,))
        self.kind = kind

        clean = {}
        for alpha, coeff in terms.items():
            alpha = MultiIndex(alpha)
            if len(alpha) != self.n:
                raise DimensionError("exponent %r has length %d, expected %d" % (tuple(alpha), len(alpha), self.n))
            if alpha.degree != self.d:
                raise DegreeError("exponent %r has degree %d, expected %d" % (tuple(alpha), alpha.degree, self.d))
            coeff = coerce_coeff(coeff, kind)
            if coeff == 0:
                continue
            clean[alpha] = coeff
        self._terms = dict((alpha, clean[alpha]) for alpha in sorted(clean, reverse=True))
        self._arrays = None

    @classmethod
    def zero(cls, n, d, kind='real'):
        return cls(n, d, {}, kind=kind)

    @classmethod
    def monomial(cls, alpha, coeff=1.0, kind=None):
        alpha = MultiIndex(alpha)
        return cls(len(alpha), alpha.degree, {alpha: coeff}, kind=kind)

    @classmethod
    def constant(cls, n, value, kind=None):
        return cls(n, 0, {MultiIndex.zero(n): value}, kind=kind)

    @classmethod
    def from_quadratic(cls, Q, kind=None):
        """The quadratic form x^T Q x (Q symmetrized first)."""
        Q = np.asarray(Q)
        if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
            raise DimensionError("quadratic form needs a square matrix, got shape %r" % (Q.shape,))
        n = Q.shape[0]
        terms = {}
        for i in range(n):
            terms[MultiIndex.unit(n, i) * 2] = Q[i, i]
            for j in range(i + 1, n):
                terms[MultiIndex.unit(n, i) + MultiIndex.unit(n, j)] = Q[i, j] + Q[j, i]
        if kind is None and Q.dtype == object:
            kind = 'exact'
        return cls(n, 2, terms, kind=kind)

    @classmethod
    def from_dict(cls, data):
        """
        Build from the JSON layout {"n", "d", "terms": [{"alpha", "coeff"}]}.
        Duplicate exponents are summed.
        """
        n = data['n']
        d = data['d']
        terms = {}
        for item in data['terms']:
            alpha = MultiIndex(item['alpha'])
            coeff = item['coeff']
            if isinstance(coeff, (list, tuple)):
                coeff = complex(coeff[0], coeff[1])
            elif isinstance(coeff, str):
                coeff = Fraction(coeff)
            terms[alpha] = terms.get(alpha, 0) + coeff
        return cls(n, d, terms, kind=data.get('kind', None))

    def to_dict(self):
        items = []
        for alpha, coeff in self._terms.items():
            if self.kind == 'complex':
                value = [coeff.real, coeff.imag]
            elif self.kind == 'exact':
                value = float(coeff) if coeff.denominator == 1 else str(coeff)
            else:
                value = coeff
            items.append({'alpha': list(alpha), 'coeff': value})
        return {'n': self.n, 'd': self.d, 'kind': self.kind, 'terms': items}

    # -- container protocol

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, alpha):
        return self._terms.get(MultiIndex(alpha), self._zero())

    def __len__(self):
        return len(self._terms)

    def term_count(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def _zero(self):
        if self.kind == 'exact':
            return Fraction(0)
        if self.kind == 'complex':
            return 0j
        return 0.0

    # -- predicates

    def is_zero(self):
        return not self._terms

    def is_multilinear(self):
        return all(alpha.is_multilinear() for alpha in self._terms)

    def is_nonnegative(self):
        if self.kind == 'complex':
            return all(c.imag == 0 and c.real >= 0 for c in self._terms.values())
        return all(c >= 0 for c in self._terms.values())

    def is_real(self):
        return self.kind != 'complex'

    def max_abs_coeff(self):
        if not self._terms:
            return 0.0
        return max(abs(complex(c)) if self.kind == 'complex' else abs(float(c)) for c in self._terms.values())

    # -- conversions

    def to_exact(self):
        if self.kind == 'complex':
            raise CoefficientError("complex polynomial has no exact rational form")
        return HomogPoly(self.n, self.d, self._terms, kind='exact')

    def to_float(self):
        if self.kind == 'exact':
            return HomogPoly(self.n, self.d, self._terms, kind='real')
        return self

    def to_complex(self):
        return HomogPoly(self.n, self.d, self._terms, kind='complex')

    def conjugate(self):
        if self.kind != 'complex':
            return self
        return HomogPoly(self.n, self.d, dict((a, c.conjugate()) for a, c in self._terms.items()), kind='complex')

    # -- dense arrays for evaluation

    def arrays(self):
        """(exponent matrix T x n, float/complex coefficient vector T)"""
        if self._arrays is None:
            if self._terms:
                exps = np.array(list(self._terms.keys()), dtype=np.int64).reshape(len(self._terms), self.n)
            else:
                exps = np.zeros((0, self.n), dtype=np.int64)
            dtype = np.complex128 if self.kind == 'complex' else np.float64
            coeffs = np.array([complex(c) if self.kind == 'complex' else float(c)
                               for c in self._terms.values()], dtype=dtype)
            self._arrays = (exps, coeffs)
        return self._arrays

    # -- evaluation

    def evaluate(self, x):
        x = np.asarray(x)
        if x.ndim != 1 or x.shape[0] != self.n:
            raise DimensionError("point has shape %r, polynomial has %d variables" % (x.shape, self.n))
        if x.dtype == object:
            return self._evaluate_exact(x)
        return self.eval_many(x[None, :])[0]

    __call__ = evaluate

    def _evaluate_exact(self, x):
        total = self._zero()
        for alpha, coeff in self._terms.items():
            term = coeff
            for xi, a in zip(x, alpha):
                if a:
                    term = term * xi ** a
            total = total + term
        return total

    def eval_many(self, X):
        """Evaluate at every row of X (shape B x n); returns a length-B array."""
        X = np.asarray(X)
        if X.ndim != 2 or X.shape[1] != self.n:
            raise DimensionError("points have shape %r, polynomial has %d variables" % (X.shape, self.n))
        exps, coeffs = self.arrays()
        dtype = np.result_type(X.dtype, coeffs.dtype, np.float64)
        count = X.shape[0]
        out = np.zeros(count, dtype=dtype)
        if coeffs.size == 0 or count == 0:
            return out
        block = max(1, EVAL_BLOCK // max(1, coeffs.size * self.n))
        for start in range(0, count, block):
            chunk = X[start:start + block].astype(dtype)
            monomials = np.prod(chunk[:, None, :] ** exps[None, :, :], axis=2)
            out[start:start + block] = monomials.dot(coeffs)
        return out

    # -- arithmetic

    def _check_compatible(self, other):
        if not isinstance(other, HomogPoly):
            raise TypeError("expected HomogPoly, got %r" % (type(other),))
        if other.n != self.n:
            raise DimensionError("variable count mismatch %d != %d" % (self.n, other.n))

    def __add__(self, other):
        self._check_compatible(other)
        if other.d != self.d:
            raise DegreeError("cannot add degree %d and degree %d polynomials" % (self.d, other.d))
        kind = result_kind(self.kind, other.kind)
        terms = dict(self._terms)
        for alpha, coeff in other._terms.items():
            terms[alpha] = terms.get(alpha, 0) + coeff
        if kind != 'exact':
            terms = dict((a, coerce_coeff(c, kind)) for a, c in terms.items())
        return HomogPoly(self.n, self.d, terms, kind=kind)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        kind = self.kind
        if isinstance(factor, (complex, np.complexfloating)):
            kind = 'complex'
        elif kind == 'exact' and not exact.is_exact(factor):
            kind = 'real'
        terms = dict((a, c * factor) for a, c in self._terms.items())
        return HomogPoly(self.n, self.d, terms, kind=kind)

    def __mul__(self, other):
        if isinstance(other, (numbers.Number, np.number)):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (numbers.Number, np.number)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, r):
        return pow(self, r)

    # -- comparison

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self.n == other.n and self.d == other.d and self._terms == other._terms

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def allclose(self, other, tol=1e-10):
        """Coefficientwise |f_a - g_a| <= tol * max(1, max|coeff|)."""
        self._check_compatible(other)
        if self.d != other.d:
            return False
        scale = max(1.0, self.max_abs_coeff(), other.max_abs_coeff())
        for alpha in set(self._terms) | set(other._terms):
            diff = complex(self.coefficient(alpha)) - complex(other.coefficient(alpha))
            if abs(diff) > tol * scale:
                return False
        return True

    def __repr__(self):
        return "HomogPoly(n=%d, d=%d, terms=%d, kind=%s)" % (self.n, self.d, len(self._terms), self.kind)

def evaluate(f, x):
    return f.evaluate(x)

def multiply(f, g, capacity=None):
    """Product of two homogeneous polynomials in the same variables."""
    f._check_compatible(g)
    capacity = config.resolve(capacity)
    kind = result_kind(f.kind, g.kind)
    d = f.d + g.d
    if f.is_zero() or g.is_zero():
        return HomogPoly.zero(f.n, d, kind=kind)
    capacity.check_entries(len(f) * len(g), "product expansion")

    if kind == 'exact':
        terms = {}
        for a, ca in f.items():
            for b, cb in g.items():
                key = a + b
                terms[key] = terms.get(key, 0) + ca * cb
                if len(terms) > capacity.terms:
                    capacity.check_terms(len(terms), "product")
        return HomogPoly(f.n, d, terms, kind=kind)

    fe, fc = f.arrays()
    ge, gc = g.arrays()
    codes = (exponent_codes(fe, d)[:, None] + exponent_codes(ge, d)[None, :]).reshape(-1)
    values = (fc[:, None] * gc[None, :]).reshape(-1)
    uniq, first, inverse = np.unique(codes, return_index=True, return_inverse=True)
    capacity.check_terms(len(uniq), "product")
    if np.iscomplexobj(values):
        sums = (np.bincount(inverse, weights=values.real, minlength=len(uniq))
                + 1j * np.bincount(inverse, weights=values.imag, minlength=len(uniq)))
    else:
        sums = np.bincount(inverse, weights=values, minlength=len(uniq))
    rows = first // len(gc)
    cols = first % len(gc)
    exps = fe[rows] + ge[cols]
    terms = {}
    for alpha, value in zip(map(tuple, exps), sums):
        terms[alpha] = value
    return HomogPoly(f.n, d, terms, kind=kind)

def pow(f, r, capacity=None):
    """f(x)^r as a degree d*r polynomial."""
    if int(r) != r or r < 1:
        raise ValueError("power must be a positive integer, got %r" % (r,))
    capacity = config.resolve(capacity)
    result = f
    base = f
    r = int(r) - 1
    # square and multiply
    while r:
        if r & 1:
            result = multiply(result, base, capacity)
        r >>= 1
        if r:
            base = multiply(base, base, capacity)
    log.debug("power of %r has %d terms", f, len(result))
    return result

class SymMatRep(object):
    """
    Dense matrix indexed by [n]^k x [n]^k (lexicographic tuple order)
    representing the degree 2k polynomial (x^{(k)})^T M x^{(k)}.
    """
    __slots__ = ('n', 'k', 'entries', 'sos_symmetric')

    def __init__(self, n, k, entries, sos_symmetric=False, check=True):
        entries = np.asarray(entries)
        size = n ** k
        if entries.shape != (size, size):
            raise DimensionError("expected a %dx%d matrix for n=%d k=%d, got %r" % (size, size, n, k, entries.shape))
        if check and not is_symmetric(entries):
            raise SymmetryError("matrix representation must be symmetric")
        self.n = n
        self.k = k
        self.entries = entries
        self.sos_symmetric = bool(sos_symmetric)

    @property
    def degree(self):
        return 2 * self.k

    @property
    def exact(self):
        return self.entries.dtype == object

    @property
    def shape(self):
        return self.entries.shape

    def tensor(self):
        return self.entries.reshape((self.n,) * (2 * self.k))

    def quadratic_form(self, x):
        """(x^{(k)})^T M x^{(k)}; bilinear, no conjugation for complex x."""
        x = np.asarray(x)
        if x.shape != (self.n,):
            raise DimensionError("point has shape %r, expected (%d,)" % (x.shape, self.n))
        v = tensor_power_vector(x, self.k)
        return v.dot(self.entries.dot(v))

    def entry_codes(self):
        rows = exponent_codes(tuple_exponents(self.n, self.k), self.degree)
        return rows[:, None] + rows[None, :]

    def is_sos_symmetric(self, tol=0.0):
        """Exhaustive check that entries depend only on alpha(I) + alpha(J)."""
        codes = self.entry_codes().reshape(-1)
        values = self.entries.reshape(-1)
        if self.exact:
            seen = {}
            for code, value in zip(codes, values):
                value = exact.to_fraction(value)
                if code in seen:
                    if abs(seen[code] - value) > tol:
                        return False
                else:
                    seen[code] = value
            return True
        order = np.argsort(codes, kind='stable')
        codes = codes[order]
        values = values[order]
        starts = np.concatenate([[0], np.flatnonzero(codes[1:] != codes[:-1]) + 1])
        highs = np.maximum.reduceat(values, starts)
        lows = np.minimum.reduceat(values, starts)
        return bool(np.all(highs - lows <= tol))

    def symmetrize(self):
        """Orbit average: the SoS-symmetric matrix representing the same polynomial."""
        codes = self.entry_codes().reshape(-1)
        values = self.entries.reshape(-1)
        if self.exact:
            sums = {}
            counts = {}
            for code, value in zip(codes, values):
                sums[code] = sums.get(code, 0) + exact.to_fraction(value)
                counts[code] = counts.get(code, 0) + 1
            out = np.empty(values.shape, dtype=object)
            for i, code in enumerate(codes):
                out[i] = sums[code] / counts[code]
        else:
            uniq, inverse = np.unique(codes, return_inverse=True)
            sums = np.bincount(inverse, weights=values.astype(np.float64), minlength=len(uniq))
            counts = np.bincount(inverse, minlength=len(uniq))
            out = (sums / counts)[inverse]
        return SymMatRep(self.n, self.k, out.reshape(self.entries.shape), sos_symmetric=True, check=False)

    def to_poly(self):
        """The polynomial this matrix represents."""
        exps = tuple_exponents(self.n, self.k)
        size = exps.shape[0]
        terms = {}
        flat = self.entries
        for i in range(size):
            for j in range(size):
                value = flat[i, j]
                if value == 0:
                    continue
                alpha = tuple(exps[i] + exps[j])
                terms[alpha] = terms.get(alpha, 0) + value
        kind = 'exact' if self.exact else 'real'
        return HomogPoly(self.n, self.degree, terms, kind=kind)

    def slice(self, x, y):
        return slice_matrix(self, x, y)

    def to_float(self):
        if not self.exact:
            return self
        return SymMatRep(self.n, self.k, exact.to_float_array(self.entries), self.sos_symmetric, check=False)

    def __repr__(self):
        return "SymMatRep(n=%d, k=%d, sos_symmetric=%s)" % (self.n, self.k, self.sos_symmetric)

def is_symmetric(entries, tol=SYMMETRY_TOL):
    entries = np.asarray(entries)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        return False
    if entries.dtype == object:
        return bool(np.all(entries == entries.T))
    scale = max(1.0, float(np.max(np.abs(entries)))) if entries.size else 1.0
    return bool(np.all(np.abs(entries - entries.T) <= tol * scale))

def tensor_power_vector(x, k):
    """x^{(k)} flattened in lexicographic tuple order."""
    x = np.asarray(x)
    v = np.ones(1, dtype=x.dtype)
    for i in range(k):
        v = np.multiply.outer(v, x).reshape(-1)
    return v

def sos_matrix(f, capacity=None):
    """
    The SoS-symmetric representation M_f[I,J] = f_{alpha(I)+alpha(J)} /
    |orbit(alpha(I)+alpha(J))|. Exact polynomials give Fraction entries.
    """
    if f.d % 2:
        raise DegreeError("SoS-symmetric matrix needs an even degree, got %d" % f.d)
    if f.kind == 'complex':
        raise CoefficientError("SoS-symmetric matrix needs real coefficients")
    capacity = config.resolve(capacity)
    k = f.d // 2
    size = f.n ** k
    capacity.check_entries(size * size, "SoS-symmetric matrix")
    log.debug("building %dx%d SoS-symmetric matrix for %r", size, size, f)

    rows = exponent_codes(tuple_exponents(f.n, k), f.d)
    codes = (rows[:, None] + rows[None, :]).reshape(-1)

    if f.is_zero():
        if f.kind == 'exact':
            entries = exact.zeros((size, size))
        else:
            entries = np.zeros((size, size))
        return SymMatRep(f.n, k, entries, sos_symmetric=True, check=False)

    alphas = list(f._terms.keys())
    term_codes = exponent_codes(np.array(alphas, dtype=np.int64).reshape(len(alphas), f.n), f.d)
    order = np.argsort(term_codes, kind='stable')
    sorted_codes = term_codes[order]
    pos = np.searchsorted(sorted_codes, codes)
    pos = np.minimum(pos, len(sorted_codes) - 1)
    hit = sorted_codes[pos] == codes
    which = order[pos]

    if f.kind == 'exact':
        values = [f._terms[alpha] / orbit_size(alpha) for alpha in alphas]
        entries = exact.zeros(size * size)
        for cell in np.flatnonzero(hit):
            entries[cell] = values[which[cell]]
    else:
        values = np.array([float(f._terms[alpha]) / orbit_size(alpha) for alpha in alphas])
        entries = np.where(hit, values[which], 0.0)
    return SymMatRep(f.n, k, entries.reshape(size, size), sos_symmetric=True, check=False)

def slice_matrix(M, x, y):
    """
    Reshape of the order 4 tensor T[i1..i4] = M[(i1,i2),(i3,i4)] into an
    n^x by n^y matrix (first x indices on the rows).
    """
    if M.k != 2:
        raise DegreeError("slices are defined for degree 4 representations, got k=%d" % M.k)
    if x + y != 4 or x < 0 or y < 0:
        raise DegreeError("slice shape (%r, %r) must split 4" % (x, y))
    return M.entries.reshape(M.n ** x, M.n ** y)

def quadratic_matrix(f):
    """Symmetric Q with x^T Q x == f(x) for a quadratic f."""
    if f.d != 2:
        raise DegreeError("quadratic_matrix needs degree 2, got %d" % f.d)
    dtype = object if f.kind == 'exact' else (np.complex128 if f.kind == 'complex' else np.float64)
    Q = exact.zeros((f.n, f.n)) if f.kind == 'exact' else np.zeros((f.n, f.n), dtype=dtype)
    for alpha, coeff in f.items():
        support = alpha.support()
        if len(support) == 1:
            i = support[0]
            Q[i, i] = Q[i, i] + coeff
        else:
            i, j = support
            Q[i, j] = Q[i, j] + coeff / 2
            Q[j, i] = Q[j, i] + coeff / 2
    return Q
