from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )

import numbers
from fractions import Fraction
from decimal import Decimal

import numpy as np

Rational = numbers.Rational

def to_fraction(value):
    """
    Exact conversion to :class:`fractions.Fraction`. Floats convert exactly
    (no denominator limiting), strings go through the Fraction parser.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, np.bool_)):
        return Fraction(int(value))
    if isinstance(value, (numbers.Integral, np.integer)):
        return Fraction(int(value))
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, (float, np.floating)):
        return Fraction.from_float(float(value))
    if isinstance(value, Decimal):
        return Fraction.from_decimal(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError("cannot convert %r to an exact rational" % (value,))

def is_exact(value):
    return isinstance(value, (Rational, numbers.Integral, np.integer))

def fraction_array(values):
    """Object array of Fractions with the shape of ``values``."""
    values = np.asarray(values, dtype=object)
    out = np.empty(values.shape, dtype=object)
    flat_in = values.reshape(-1)
    flat_out = out.reshape(-1)
    for i in range(flat_in.size):
        flat_out[i] = to_fraction(flat_in[i])
    return out

def zeros(shape):
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out

def to_float_array(values):
    values = np.asarray(values)
    if values.dtype == object:
        return np.array([float(v) for v in values.reshape(-1)], dtype=np.float64).reshape(values.shape)
    return values.astype(np.float64)

def max_abs_difference(a, b):
    """Largest entrywise |a - b|; exact (a Fraction) when both sides are."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError("shape mismatch %r != %r" % (a.shape, b.shape))
    if a.dtype == object or b.dtype == object:
        best = Fraction(0)
        for x, y in zip(a.reshape(-1), b.reshape(-1)):
            diff = abs(to_fraction(x) - to_fraction(y))
            if diff > best:
                best = diff
        return best
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))
