from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )

import math
import logging
import itertools
from fractions import Fraction
from functools import reduce

import numpy as np

from . import config
from . import exact
from .poly import HomogPoly, SymMatRep, sos_matrix, slice_matrix
from .spectral import schatten1, singular_values, SYMMETRY_TOL
from .utils import compositions
from .exceptions import DegreeError, DimensionError, SymmetryError

log = logging.getLogger(__name__)

FLOAT_TOL = 1e-9
PSD_TOL = 1e-8

CONVENTIONS = ('corrected', 'squared')
MODES = ('exact', 'float')

LEFT = 'L'
RIGHT = 'R'

def kron(a, b):
    """Kronecker product through an outer product, so object arrays stay exact."""
    a = np.asarray(a)
    b = np.asarray(b)
    out = np.multiply.outer(a, b)
    return out.transpose(0, 2, 1, 3).reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])

def kron_all(mats):
    return reduce(kron, mats)

def _check_q(q):
    if q < 4 or q % 4:
        raise DegreeError("q must be a positive multiple of 4, got %r" % (q,))

def _entries(M, mode=None):
    """Entries of a degree 4 representation, converted for ``mode``."""
    if isinstance(M, SymMatRep):
        if M.k != 2:
            raise DegreeError("expected a degree 4 representation, got k=%d" % M.k)
        entries = M.entries
        n = M.n
    else:
        entries = np.asarray(M)
        n = int(round(math.sqrt(entries.shape[0]))) if entries.ndim == 2 else 0
        if entries.ndim != 2 or entries.shape != (n * n, n * n):
            raise DimensionError("expected an n^2 x n^2 matrix, got shape %r" % (entries.shape,))
    if mode == 'exact' and entries.dtype != object:
        entries = exact.fraction_array(entries)
    elif mode == 'float' and entries.dtype == object:
        entries = exact.to_float_array(entries)
    return n, entries

def _rep(M, mode=None):
    n, entries = _entries(M, mode)
    return SymMatRep(n, 2, entries, check=False)

class TemplateHypergraph(object):
    """
    4-uniform template hypergraph on the symbolic vertex set L + R with
    |L| = left_size and |R| = right_size. Vertices are (side, index) pairs,
    side 'L' or 'R'.
    """
    __slots__ = ('left_size', 'right_size', 'edges')

    def __init__(self, left_size, right_size, edges):
        self.left_size = int(left_size)
        self.right_size = int(right_size)
        clean = []
        for edge in edges:
            edge = tuple((side, int(i)) for side, i in edge)
            if len(edge) != 4 or len(set(edge)) != 4:
                raise ValueError("template edge %r must have 4 distinct vertices" % (edge,))
            for side, i in edge:
                size = self.left_size if side == LEFT else self.right_size if side == RIGHT else None
                if size is None:
                    raise ValueError("unknown vertex side %r" % (side,))
                if not 0 <= i < size:
                    raise ValueError("vertex %s%d outside the template" % (side, i))
            clean.append(edge)
        self.edges = clean

    @classmethod
    def single(cls, x, y):
        """H_{x,y}: one edge on x left and y right vertices."""
        if x + y != 4 or x < 0 or y < 0:
            raise DegreeError("single edge template needs x + y = 4, got (%r, %r)" % (x, y))
        edge = [(LEFT, i) for i in range(x)] + [(RIGHT, j) for j in range(y)]
        return cls(x, y, [edge])

    def disjoint_union(self, other):
        edges = list(self.edges)
        for edge in other.edges:
            shifted = []
            for side, i in edge:
                shift = self.left_size if side == LEFT else self.right_size
                shifted.append((side, i + shift))
            edges.append(shifted)
        return TemplateHypergraph(self.left_size + other.left_size,
                                  self.right_size + other.right_size, edges)

    def __or__(self, other):
        return self.disjoint_union(other)

    def permuted(self, sigma_left, sigma_right):
        """H^{sigma1, sigma2}: left vertex i becomes sigma1[i], right j becomes sigma2[j]."""
        if sorted(sigma_left) != list(range(self.left_size)):
            raise ValueError("%r is not a permutation of the left vertices" % (sigma_left,))
        if sorted(sigma_right) != list(range(self.right_size)):
            raise ValueError("%r is not a permutation of the right vertices" % (sigma_right,))
        edges = []
        for edge in self.edges:
            edges.append([(side, sigma_left[i] if side == LEFT else sigma_right[i]) for side, i in edge])
        return TemplateHypergraph(self.left_size, self.right_size, edges)

    def __repr__(self):
        return "TemplateHypergraph(%d, %d, edges=%d)" % (self.left_size, self.right_size, len(self.edges))

def hypergraphical_matrix(T, H, n=None, capacity=None):
    """
    The n^{q1} x n^{q2} matrix whose [I, J] entry is the product over the
    edges of H of T at the instantiated vertices. ``T`` is an order 4
    tensor, or a degree 4 matrix representation.
    """
    if isinstance(T, SymMatRep):
        T = T.tensor()
    T = np.asarray(T)
    if n is None:
        n = T.shape[0]
    if T.shape != (n,) * 4:
        raise DimensionError("expected an order 4 tensor of side %d, got shape %r" % (n, T.shape))
    order = H.left_size + H.right_size
    capacity = config.resolve(capacity)
    capacity.check_entries(n ** order, "hypergraphical matrix")

    if T.dtype == object:
        out = np.empty((n,) * order, dtype=object)
        out.fill(Fraction(1))
    else:
        out = np.ones((n,) * order, dtype=T.dtype)
    for edge in H.edges:
        axes = [i if side == LEFT else H.left_size + i for side, i in edge]
        # place T's axes at the edge positions, broadcasting over the rest
        rank = sorted(range(4), key=lambda t: axes[t])
        view = T.transpose(rank)
        shape = [1] * order
        for pos in axes:
            shape[pos] = n
        out = out * view.reshape(shape)
    return out.reshape(n ** H.left_size, n ** H.right_size)

def permutation_matrix(sigma, n):
    """
    P_sigma on [n]^k: (P_sigma X)[I, .] = X[J, .] with J_i = I_{sigma(i)}.
    """
    k = len(sigma)
    size = n ** k
    P = np.zeros((size, size))
    digits = np.indices((n,) * k).reshape(k, -1).T
    for row, I in enumerate(digits):
        col = 0
        for i in range(k):
            col = col * n + int(I[sigma[i]])
        P[row, col] = 1.0
    return P

def _sum_axis_permutations(Y, start, count):
    """Sum of Y over every permutation of its axes start..start+count-1."""
    order = Y.ndim
    total = None
    for perm in itertools.permutations(range(start, start + count)):
        axes = list(range(start)) + list(perm) + list(range(start + count, order))
        term = Y.transpose(axes)
        total = term if total is None else total + term
    return total

def row_column_symmetrize(X, n, k):
    """P X P^T with P the sum of P_sigma over S_k, applied rows first."""
    Y = np.asarray(X).reshape((n,) * (2 * k))
    Y = _sum_axis_permutations(Y, 0, k)
    Y = _sum_axis_permutations(Y, k, k)
    return Y.reshape(n ** k, n ** k)

def permutation_sum(B, n, q):
    """Sum of B^pi over all pi in S_q, acting on the q tensor axes of B."""
    Y = np.asarray(B).reshape((n,) * q)
    return _sum_axis_permutations(Y, 0, q).reshape(n ** (q // 2), n ** (q // 2))

def kron_power(M, r):
    entries = M.entries if isinstance(M, SymMatRep) else np.asarray(M)
    return kron_all([entries] * r)

def sym_kron_power(M, q, capacity=None):
    """
    SoS-symmetrization of M^{(x) q/4}: the orbit average, equal to
    (1/q!) times the sum of its q! axis permutations.
    """
    _check_q(q)
    n, entries = _entries(M)
    capacity = config.resolve(capacity)
    capacity.check_entries(n ** q, "symmetrized Kronecker power")
    B = kron_power(entries, q // 4)
    lifted = SymMatRep(n, q // 2, B, check=False).symmetrize()
    log.debug("sym_kron_power n=%d q=%d", n, q)
    return lifted

def multiplicity(a, b, c, d, convention='corrected'):
    """
    R(a, b, c, d): how often the row and column permutations P_sigma X P_tau^T
    of one term repeat the same set partition. ``convention='squared'`` uses
    c!^2 in the c factor instead of c!.
    """
    if convention not in CONVENTIONS:
        raise ValueError("unknown multiplicity convention %r" % (convention,))
    f = math.factorial
    c_factor = f(c) * f(2) ** (2 * c)
    if convention == 'squared':
        c_factor *= f(c)
    b_factor = f(b) * f(2 * a + b) * f(3) ** (2 * a + 2 * b)
    d_factor = f(d) * f(a + d) * f(4) ** (a + 2 * d)
    return c_factor * b_factor * d_factor

class TetrisTerm(object):
    __slots__ = ('a', 'b', 'c', 'd', 'transposed')

    def __init__(self, a, b, c, d, transposed=False):
        if transposed and a < 1:
            raise ValueError("the transposed branch needs a >= 1")
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        self.transposed = bool(transposed)

    @property
    def q(self):
        return 12 * self.a + 8 * self.b + 4 * self.c + 8 * self.d

    def multiplicity(self, convention='corrected'):
        return multiplicity(self.a, self.b, self.c, self.d, convention)

    def weight(self, convention='corrected'):
        return Fraction(1, self.multiplicity(convention))

    def template(self):
        """
        H_A^a + H_B^b + H_C^c + H_D^d with H_A = H31 + H04 + H31 (its mirror
        H13 + H40 + H13 on the transposed branch), H_B = H31 + H13,
        H_C = H22 and H_D = H04 + H40.
        """
        single = TemplateHypergraph.single
        if self.transposed:
            block_a = [single(1, 3), single(4, 0), single(1, 3)]
        else:
            block_a = [single(3, 1), single(0, 4), single(3, 1)]
        blocks = (block_a * self.a
                  + [single(3, 1), single(1, 3)] * self.b
                  + [single(2, 2)] * self.c
                  + [single(0, 4), single(4, 0)] * self.d)
        return reduce(TemplateHypergraph.disjoint_union, blocks)

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d, self.transposed)

    def __eq__(self, other):
        if not isinstance(other, TetrisTerm):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def __repr__(self):
        return "TetrisTerm(%d, %d, %d, %d%s)" % (self.a, self.b, self.c, self.d,
                                                 ", transposed" if self.transposed else "")

def tetris_terms(q):
    """
    Every (a, b, c, d) with 12a + 8b + 4c + 8d = q. The transposed branch is
    listed only for a >= 1; for a = 0 both branches are the same matrix.
    """
    _check_q(q)
    out = []
    for a in range(q // 12, -1, -1):
        for b in range((q - 12 * a) // 8, -1, -1):
            for d in range((q - 12 * a - 8 * b) // 8, -1, -1):
                rest = q - 12 * a - 8 * b - 8 * d
                if rest % 4:
                    continue
                out.append(TetrisTerm(a, b, rest // 4, d))
                if a >= 1:
                    out.append(TetrisTerm(a, b, rest // 4, d, transposed=True))
    return out

def slices(M):
    """The slices M_A, M_B, M_C, M_D of a degree 4 representation."""
    rep = _rep(M)
    m31 = slice_matrix(rep, 3, 1)
    m13 = slice_matrix(rep, 1, 3)
    m04 = slice_matrix(rep, 0, 4)
    m40 = slice_matrix(rep, 4, 0)
    return {
        'A': kron_all([m31, m04, m31]),
        'B': kron(m31, m13),
        'C': rep.entries,
        'D': kron(m04, m40),
    }

def tetris_term_matrix(M, term, convention='corrected', capacity=None):
    """P X P^T / R for one term, X the hypergraphical matrix of its template."""
    n, entries = _entries(M)
    k = term.q // 2
    X = hypergraphical_matrix(entries.reshape((n,) * 4), term.template(), n, capacity)
    Y = row_column_symmetrize(X, n, k)
    R = term.multiplicity(convention)
    if Y.dtype == object:
        return Y * Fraction(1, R)
    return Y / float(R)

def tetris_rhs(M, q, convention='corrected', capacity=None):
    """Sum of the tetris term matrices over :func:`tetris_terms`."""
    _check_q(q)
    n, entries = _entries(M)
    capacity = config.resolve(capacity)
    capacity.check_entries(n ** q, "tetris sum")
    total = None
    for term in tetris_terms(q):
        part = tetris_term_matrix(entries, term, convention, capacity)
        total = part if total is None else total + part
    return SymMatRep(n, q // 2, total, check=False)

def tetris_scale(q):
    """(q/4)! * 4!^{q/4}"""
    return math.factorial(q // 4) * math.factorial(4) ** (q // 4)

def verify_tetris(M, q, mode='exact', convention='corrected', capacity=None):
    """
    Check (q/4)! 4!^{q/4} * tetris_rhs == q! * sym_kron_power entrywise:
    exactly in 'exact' mode, to FLOAT_TOL relative in 'float' mode.
    """
    if mode not in MODES:
        raise ValueError("unknown verification mode %r" % (mode,))
    _check_q(q)
    rep = _rep(M, mode)
    tol = 0.0 if mode == 'exact' else 1e-12 * max(1.0, float(np.max(np.abs(exact.to_float_array(rep.entries)))))
    if not rep.is_sos_symmetric(tol=tol):
        raise SymmetryError("verify_tetris needs an SoS-symmetric matrix")

    lhs = tetris_rhs(rep, q, convention, capacity).entries * tetris_scale(q)
    rhs = sym_kron_power(rep, q, capacity).entries * math.factorial(q)
    error = exact.max_abs_difference(lhs, rhs)
    scale = float(np.max(np.abs(exact.to_float_array(rhs)))) if rhs.size else 0.0
    relative = float(error) / scale if scale > 0 else float(error)
    if mode == 'exact':
        passed = error == 0
    else:
        passed = relative <= FLOAT_TOL
    report = {
        'n': rep.n,
        'q': q,
        'mode': mode,
        'convention': convention,
        'terms': [list(t.as_tuple()) for t in tetris_terms(q)],
        'max_abs_error': float(error),
        'relative_error': relative,
        'pass': bool(passed),
    }
    log.info("verify_tetris n=%d q=%d %s: error=%g pass=%s", rep.n, q, mode, float(error), passed)
    return report

def random_tensor_matrix(n, seed=0, mode='exact', low=-5, high=5):
    """
    SoS-symmetric matrix of a seeded random integer quartic in n variables.
    24 times it is an integer matrix.
    """
    if mode not in MODES:
        raise ValueError("unknown mode %r" % (mode,))
    rng = np.random.default_rng(seed)
    terms = {}
    for alpha in compositions(n, 4):
        terms[alpha] = int(rng.integers(low, high + 1))
    f = HomogPoly(n, 4, terms, kind='exact')
    M = sos_matrix(f)
    if mode == 'float':
        M = M.to_float()
    return M

def single_point_moment(x):
    """(x (x) x)(x (x) x)^T for the unit vector along x."""
    x = np.asarray(x, dtype=np.float64)
    norm = np.linalg.norm(x)
    if norm == 0:
        raise ValueError("moment point must be non-zero")
    v = np.kron(x, x) / norm ** 2
    return SymMatRep(len(x), 2, np.outer(v, v), sos_symmetric=True, check=False)

def mixture_moment(points, weights=None):
    """Convex combination of single point moment matrices."""
    points = [np.asarray(p, dtype=np.float64) for p in points]
    if not points:
        raise ValueError("mixture needs at least one point")
    if weights is None:
        weights = np.ones(len(points))
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (len(points),) or np.any(weights < 0) or weights.sum() <= 0:
        raise ValueError("mixture weights must be non-negative with a positive sum")
    weights = weights / weights.sum()
    total = None
    for w, p in zip(weights, points):
        term = single_point_moment(p).entries * w
        total = term if total is None else total + term
    return SymMatRep(len(points[0]), 2, total, sos_symmetric=True, check=False)

def lift_budget(q, convention='corrected'):
    """
    Triangle inequality budget sum over terms of
    (q/4)! 4!^{q/4} ((q/2)!)^2 / (q! R) for the Schatten-1 norm of the lift
    when every factor has norm <= 1.
    """
    scale = Fraction(tetris_scale(q) * math.factorial(q // 2) ** 2, math.factorial(q))
    return sum((scale * term.weight(convention) for term in tetris_terms(q)), Fraction(0))

def lift_schatten_check(M, q, convention='corrected'):
    """
    Schatten-1 norm of the symmetrized power against the budget. The
    norm-weighted budget replaces each factor bound 1 by the actual norms of
    the slices; the plain budget is asserted only when ||M||_S1 <= 1 and
    ||M_31||_S1 <= 1.
    """
    _check_q(q)
    rep = _rep(M, 'float')
    s1_m = schatten1(rep.entries)
    s1_31 = schatten1(slice_matrix(rep, 3, 1))
    norm_04 = float(np.sqrt(np.sum(slice_matrix(rep, 0, 4) ** 2)))
    holds = s1_m <= 1.0 + FLOAT_TOL and s1_31 <= 1.0 + FLOAT_TOL

    lifted = sym_kron_power(rep, q)
    value = schatten1(lifted)

    scale = Fraction(tetris_scale(q) * math.factorial(q // 2) ** 2, math.factorial(q))
    weighted = 0.0
    for term in tetris_terms(q):
        factor = (s1_31 ** (2 * term.a) * norm_04 ** term.a * s1_31 ** (2 * term.b)
                  * s1_m ** term.c * norm_04 ** (2 * term.d))
        weighted += float(scale * term.weight(convention)) * factor
    budget = float(lift_budget(q, convention))

    within = value <= budget * (1.0 + FLOAT_TOL) + FLOAT_TOL
    if not holds:
        log.warning("lift_schatten_check: hypotheses fail (||M||_S1=%g, ||M_31||_S1=%g), reporting only",
                    s1_m, s1_31)
    elif not within:
        raise AssertionError("lifted Schatten-1 norm %g exceeds budget %g" % (value, budget))
    return {
        'q': q,
        'schatten1': value,
        'm_schatten1': s1_m,
        'm31_schatten1': s1_31,
        'hypotheses': bool(holds),
        'budget': budget,
        'weighted_budget': weighted,
        'within_budget': bool(within),
        'asserted': bool(holds),
    }

def psd_state(X, tol=PSD_TOL):
    """(is PSD, smallest eigenvalue of the symmetric part); non-symmetric X is not PSD."""
    X = exact.to_float_array(np.asarray(X))
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        return False, None
    if X.size == 0:
        return True, 0.0
    scale = max(1.0, float(np.max(np.abs(X))))
    low = float(np.linalg.eigvalsh((X + X.T) / 2.0)[0])
    if np.max(np.abs(X - X.T)) > SYMMETRY_TOL * scale:
        return False, low
    norm = float(singular_values(X)[0])
    return low >= -tol * max(1.0, norm), low

def lift_psd_check(M, q, tol=PSD_TOL):
    """
    PSD test of M, M_A and M_B; when all three pass the symmetrized power
    must be PSD to the same tolerance.
    """
    _check_q(q)
    rep = _rep(M, 'float')
    parts = slices(rep)
    pre = {}
    for name, X in (('M', rep.entries), ('A', parts['A']), ('B', parts['B'])):
        ok, low = psd_state(X, tol)
        pre[name] = {'psd': bool(ok), 'min_eigenvalue': low}
    holds = all(state['psd'] for state in pre.values())

    lifted = sym_kron_power(rep, q)
    ok, low = psd_state(lifted.entries, tol)
    if holds and not ok:
        raise AssertionError("lift of a PSD moment matrix has eigenvalue %g" % low)
    if not holds:
        log.debug("lift_psd_check: pre-check failed, reporting only")
    return {
        'q': q,
        'precheck': pre,
        'hypotheses': bool(holds),
        'lifted_psd': bool(ok),
        'lifted_min_eigenvalue': low,
        'asserted': bool(holds),
    }
