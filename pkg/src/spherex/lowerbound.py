from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )

import logging
import itertools

import numpy as np
import scipy.linalg

from . import config
from .poly import MultiIndex, HomogPoly, SymMatRep, sos_matrix
from .spectral import lambda_max, frobenius, schatten1
from .oracle import brute_norm2
from .exceptions import CertificateError, DegenerateInstanceError, DimensionError

log = logging.getLogger(__name__)

TRACE_TOL = 1e-9
PSD_TOL = 1e-7
DUAL_TOL = 1e-6

class Graph(object):
    """
    Simple undirected graph on vertices 0..n-1. Edges are stored as sorted
    pairs; ``seed`` and ``p`` record how a random graph was drawn.
    """
    __slots__ = ('n', 'edges', 'seed', 'p', '_adjacency')

    def __init__(self, n, edges=(), seed=None, p=None):
        if int(n) != n or n < 1:
            raise DimensionError("graph needs at least one vertex, got %r" % (n,))
        self.n = int(n)
        clean = set()
        for u, v in edges:
            u = int(u)
            v = int(v)
            if u == v:
                raise ValueError("self-loop at vertex %d" % u)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DimensionError("edge (%d, %d) outside [0, %d)" % (u, v, self.n))
            clean.add((min(u, v), max(u, v)))
        self.edges = sorted(clean)
        self.seed = seed
        self.p = p
        self._adjacency = None

    @classmethod
    def from_edges(cls, n, edges):
        return cls(n, edges)

    @classmethod
    def complete(cls, n):
        return cls(n, itertools.combinations(range(n), 2), p=1.0)

    @property
    def m(self):
        return len(self.edges)

    def adjacency(self):
        if self._adjacency is None:
            adj = [set() for i in range(self.n)]
            for u, v in self.edges:
                adj[u].add(v)
                adj[v].add(u)
            self._adjacency = adj
        return self._adjacency

    def neighbors(self, v):
        return self.adjacency()[v]

    def degree(self, v):
        return len(self.adjacency()[v])

    def has_edge(self, u, v):
        return v in self.adjacency()[u]

    def __repr__(self):
        return "Graph(n=%d, m=%d)" % (self.n, self.m)

def resolve_p(n, p):
    if p == 'auto':
        return float(n) ** (-1.0 / 3.0)
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0, 1], got %r" % p)
    return p

def gnp(n, p, seed=0):
    """
    G(n, p): one uniform draw per vertex pair in lexicographic order, the
    pair kept when the draw is below p. ``p='auto'`` means n^{-1/3}.
    """
    p = resolve_p(n, p)
    pairs = list(itertools.combinations(range(n), 2))
    draws = np.random.default_rng(seed).random(len(pairs))
    edges = [pair for pair, u in zip(pairs, draws) if u < p]
    log.debug("gnp(n=%d, p=%g, seed=%r): %d edges", n, p, seed, len(edges))
    return Graph(n, edges, seed=seed, p=p)

def triangles(G):
    """Sorted vertex triples spanning a triangle."""
    out = []
    for u, v in G.edges:
        for w in sorted(G.neighbors(u) & G.neighbors(v)):
            if w > v:
                out.append((u, v, w))
    return out

def four_cliques(G):
    """
    Sorted 4-cliques, found per edge (u, v) as the edges inside the common
    neighbourhood above v.
    """
    out = []
    for u, v in G.edges:
        common = sorted(w for w in G.neighbors(u) & G.neighbors(v) if w > v)
        for a, b in itertools.combinations(common, 2):
            if G.has_edge(a, b):
                out.append((u, v, a, b))
    return out

def clique_poly(G, cliques=None):
    """sum of x_i x_j x_k x_l over the 4-cliques of G."""
    if cliques is None:
        cliques = four_cliques(G)
    terms = {}
    for clique in cliques:
        terms[MultiIndex.from_indices(clique, G.n)] = 1
    return HomogPoly(G.n, 4, terms, kind='exact')

def natural_representation(G, cliques=None):
    """
    A[(i1,i2),(i3,i4)] = 1 when {i1, i2, i3, i4} is a 4-clique, so that A
    represents 24 times the clique polynomial.
    """
    if cliques is None:
        cliques = four_cliques(G)
    n = G.n
    config.current().check_entries(n ** 4, "natural representation")
    A = np.zeros((n * n, n * n))
    for clique in cliques:
        for i1, i2, i3, i4 in itertools.permutations(clique):
            A[i1 * n + i2, i3 * n + i4] = 1.0
    return SymMatRep(n, 2, A, sos_symmetric=True, check=False)

def ordered_edges(G):
    """Row indices (i1, i2) of E', both orientations of every edge."""
    rows = []
    for u, v in G.edges:
        rows.append(u * G.n + v)
        rows.append(v * G.n + u)
    return np.array(sorted(rows), dtype=np.int64)

class CliqueCertificate(object):
    """
    Moment matrix M for the clique polynomial together with the checks it
    passed. ``dual_value`` = <A, M> is a lower bound for the degree 4 SoS
    value of 24 f.
    """
    __slots__ = ('graph', 'A', 'lambda_min', 'M', 'dual_value', 'm', 'clique_count',
                 'checks')

    def __init__(self, graph, A, lambda_min, M, dual_value, clique_count, checks):
        self.graph = graph
        self.A = A
        self.lambda_min = float(lambda_min)
        self.M = M
        self.dual_value = float(dual_value)
        self.m = graph.m
        self.clique_count = int(clique_count)
        self.checks = checks

    @property
    def expected_dual(self):
        return 6.0 * self.clique_count / (self.m * abs(self.lambda_min))

    def as_dict(self):
        data = {
            'n': self.graph.n,
            'm': self.m,
            'clique_count': self.clique_count,
            'lambda_min': self.lambda_min,
            'dual_value': self.dual_value,
            'expected_dual': self.expected_dual,
        }
        data['checks'] = dict(self.checks)
        return data

    def __repr__(self):
        return "CliqueCertificate(m=%d, cliques=%d, dual=%g)" % (self.m, self.clique_count, self.dual_value)

def support_eigenvalues(M):
    """
    (smallest, largest) eigenvalue of a symmetric matrix, computed on the
    principal submatrix of its non-zero rows. Zero rows contribute 0.
    """
    M = np.asarray(M)
    rows = np.flatnonzero(np.any(M != 0, axis=1))
    if rows.size == 0:
        return 0.0, 0.0
    w = scipy.linalg.eigvalsh(M[np.ix_(rows, rows)])
    low, high = float(w[0]), float(w[-1])
    if rows.size < M.shape[0]:
        low = min(low, 0.0)
        high = max(high, 0.0)
    return low, high

def build_certificate(G, cliques=None):
    """
    M = (A + |lambda|(I + P + Q)) / (4 m |lambda|) with lambda the smallest
    eigenvalue of A on E' x E'. I is the identity on E', P swaps (i,j) with
    (j,i) on E', Q[(i,i),(j,j)] = 1 for edges ij and Q[(i,i),(i,i)] = deg(i).
    Raises :class:`DegenerateInstanceError` without edges or 4-cliques and
    :class:`CertificateError` when one of its checks fails.
    """
    if G.m == 0:
        raise DegenerateInstanceError("graph has no edges")
    if cliques is None:
        cliques = four_cliques(G)
    if not cliques:
        raise DegenerateInstanceError("graph has no 4-cliques")
    n = G.n
    m = G.m
    A = natural_representation(G, cliques)

    rows = ordered_edges(G)
    sub = A.entries[np.ix_(rows, rows)]
    lam = float(scipy.linalg.eigvalsh(sub)[0])
    if lam >= 0.0:
        raise DegenerateInstanceError("natural representation has no negative eigenvalue")
    lam = abs(lam)
    log.debug("certificate: n=%d m=%d cliques=%d |lambda_min|=%g", n, m, len(cliques), lam)

    S = np.zeros((n * n, n * n))
    for u, v in G.edges:
        uv = u * n + v
        vu = v * n + u
        uu = u * n + u
        vv = v * n + v
        S[uv, uv] += 1.0
        S[vu, vu] += 1.0
        S[uv, vu] += 1.0
        S[vu, uv] += 1.0
        S[uu, vv] += 1.0
        S[vv, uu] += 1.0
    for i in range(n):
        S[i * n + i, i * n + i] += G.degree(i)

    M = (A.entries + lam * S) / (4.0 * m * lam)
    M = SymMatRep(n, 2, M, sos_symmetric=True, check=False)
    dual = float(np.sum(A.entries * M.entries))

    trace = float(np.trace(M.entries))
    min_eig, max_eig = support_eigenvalues(M.entries)
    scale = max(1.0, abs(max_eig))
    checks = {
        'sos_symmetric': M.is_sos_symmetric(tol=0.0),
        'trace': trace,
        'trace_ok': abs(trace - 1.0) <= TRACE_TOL,
        'min_eigenvalue': min_eig,
        'psd_ok': min_eig >= -PSD_TOL * scale,
    }
    cert = CliqueCertificate(G, A, -lam, M, dual, len(cliques), checks)
    checks['dual_ok'] = abs(dual - cert.expected_dual) <= DUAL_TOL * cert.expected_dual
    for name in ('sos_symmetric', 'trace_ok', 'psd_ok', 'dual_ok'):
        if not checks[name]:
            raise CertificateError("certificate check %s failed: %r" % (name, checks))
    return cert

def _check_disjoint(sets, n):
    seen = set()
    for s in sets:
        for v in s:
            if not 0 <= v < n:
                raise DimensionError("vertex %r outside [0, %d)" % (v, n))
            if v in seen:
                raise ValueError("vertex sets overlap at %r" % (v,))
            seen.add(v)

def _shattered(cliques, sets):
    count = 0
    for clique in cliques:
        for perm in itertools.permutations(clique):
            if all(v in s for v, s in zip(perm, sets)):
                count += 1
    return count

def shattered_cliques(G, z1, z2, z3, z4):
    """Number of ordered 4-cliques (i1..i4) with i_k in Z_k."""
    sets = [set(z) for z in (z1, z2, z3, z4)]
    _check_disjoint(sets, G.n)
    return _shattered(four_cliques(G), sets)

def shattered_triangles(G, s1, s2, s3):
    sets = [set(s) for s in (s1, s2, s3)]
    _check_disjoint(sets, G.n)
    return _shattered(triangles(G), sets)

def fsp_lower(g):
    """||M_g||_F^2 / ||M_g||_S1 for the SoS-symmetric matrix of g; 0 for g = 0."""
    if g.is_zero():
        return 0.0
    M = sos_matrix(g.to_float())
    s1 = schatten1(M)
    if s1 == 0.0:
        return 0.0
    return frobenius(M) ** 2 / s1

def gap_report(n, p, seed=0, oracle_restarts=1000, graph=None):
    """
    Clique instance report: the certificate, an oracle estimate of ||f||_2
    and the ratio dual_value / oracle. Since A represents 24 f,
    ``normalized_ratio`` divides the dual value by 24 first.
    """
    G = graph if graph is not None else gnp(n, p, seed)
    cliques = four_cliques(G)
    cert = build_certificate(G, cliques)
    f = clique_poly(G, cliques)
    oracle = brute_norm2(f, restarts=oracle_restarts, seed=seed)
    upper = 24.0 * lambda_max(sos_matrix(f.to_float()))[0]
    report = {
        'n': G.n,
        'p': G.p,
        'seed': G.seed,
        'm': cert.m,
        'clique_count': cert.clique_count,
        'lambda_min': cert.lambda_min,
        'dual_value': cert.dual_value,
        'expected_dual': cert.expected_dual,
        'checks': dict(cert.checks),
        'oracle': oracle.as_dict(),
        'oracle_norm_estimate': oracle.value,
        'ratio': cert.dual_value / oracle.value if oracle.value > 0 else None,
        'normalized_ratio': cert.dual_value / (24.0 * oracle.value) if oracle.value > 0 else None,
        'sos_upper': upper,
        'dual_below_upper': cert.dual_value <= upper + 1e-9,
    }
    log.info("gap report: m=%d cliques=%d dual=%g oracle=%g", cert.m, cert.clique_count,
             cert.dual_value, oracle.value)
    return report, cert, f
