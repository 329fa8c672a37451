from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )

import math
import itertools

import numpy as np

from .cache import LRUCacheDict

INT64_LIMIT = 2**62

_index_cache = LRUCacheDict(64)

def multinomial(alpha):
    """|alpha|! / prod(alpha_i!)"""
    total = math.factorial(sum(alpha))
    for a in alpha:
        total //= math.factorial(a)
    return total

def compositions(n, d):
    """
    Every exponent vector of length n summing to d, in descending
    lexicographic order of the exponents, i.e. x1^d first.
    """
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in compositions(n - 1, d - first):
            yield (first,) + rest

def compositions_up_to(n, dmax):
    for d in range(dmax + 1):
        for alpha in compositions(n, d):
            yield alpha

def binary_vectors(n, weight):
    """0/1 exponent vectors of length n with ``weight`` ones."""
    for support in itertools.combinations(range(n), weight):
        alpha = [0] * n
        for i in support:
            alpha[i] = 1
        yield tuple(alpha)

def tuple_exponents(n, k):
    """
    Row index map for [n]^k in lexicographic (C) order: row r holds the
    exponent vector alpha(I) of the r-th tuple I.
    """
    key = ('exp', n, k)
    table = _index_cache.get(key)
    if table is not None:
        return table
    count = n ** k
    table = np.zeros((count, n), dtype=np.int64)
    if k > 0:
        digits = np.indices((n,) * k).reshape(k, -1)
        for axis in range(k):
            np.add.at(table, (np.arange(count), digits[axis]), 1)
    table.flags.writeable = False
    _index_cache[key] = table
    return table

def tuple_digits(n, k):
    """(n^k, k) array of the tuples themselves, lexicographic order."""
    key = ('digits', n, k)
    table = _index_cache.get(key)
    if table is not None:
        return table
    if k == 0:
        table = np.zeros((1, 0), dtype=np.int64)
    else:
        table = np.indices((n,) * k).reshape(k, -1).T.copy()
    table.flags.writeable = False
    _index_cache[key] = table
    return table

def tuple_index(tup, n):
    """Row of tuple ``tup`` in the lexicographic order over [n]^len(tup)."""
    index = 0
    for i in tup:
        index = index * n + int(i)
    return index

def code_base(degree):
    return degree + 1

def exponent_codes(exponents, degree):
    """
    Integer code sum(alpha_i * (degree+1)^i) for each row. Sums of codes of
    exponent vectors with total degree <= ``degree`` never carry, so
    code(a) + code(b) == code(a + b). Falls back to Python ints when the code
    would not fit in int64.
    """
    exponents = np.asarray(exponents)
    n = exponents.shape[-1]
    base = code_base(degree)
    if base ** n < INT64_LIMIT:
        powers = base ** np.arange(n, dtype=np.int64)
        return exponents.astype(np.int64).dot(powers)
    powers = np.array([base ** i for i in range(n)], dtype=object)
    return exponents.astype(object).dot(powers)

def register(registry, name):
    """Decorator filling a name -> callable registry."""
    def wrapper(func):
        registry[name] = func
        return func
    return wrapper
