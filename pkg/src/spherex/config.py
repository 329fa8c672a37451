from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )

import os
import logging
import contextlib

from .exceptions import ConfigError, CapacityError

log = logging.getLogger(__name__)

CAP_ENV = 'SPHEREX_CAP'

DEFAULT_TERMS = 10**7
DEFAULT_ENTRIES = 10**8
DEFAULT_CANDIDATES = 10**6

class Capacity(object):
    """
    Size limits for the n^O(q) objects built by the library. Every operation
    that may grow past desk scale checks against one of these and raises
    :class:`CapacityError` instead of truncating.
    """
    __slots__ = ('terms', 'entries', 'candidates')

    def __init__(self, terms=DEFAULT_TERMS, entries=DEFAULT_ENTRIES, candidates=DEFAULT_CANDIDATES):
        for name, value in (('terms', terms), ('entries', entries), ('candidates', candidates)):
            if int(value) != value or value < 1:
                raise ConfigError("capacity %s must be a positive integer, got %r" % (name, value))
        self.terms = int(terms)
        self.entries = int(entries)
        self.candidates = int(candidates)

    @classmethod
    def from_cap(cls, cap):
        cap = int(cap)
        if cap < 1:
            raise ConfigError("capacity must be a positive integer, got %r" % cap)
        return cls(terms=cap, entries=10 * cap)

    @classmethod
    def from_env(cls, environ=None):
        environ = os.environ if environ is None else environ
        value = environ.get(CAP_ENV, None)
        if value is None or value.strip() == '':
            return cls()
        try:
            cap = int(value)
        except ValueError:
            raise ConfigError("%s must be an integer, got %r" % (CAP_ENV, value))
        log.debug("capacity from %s=%d", CAP_ENV, cap)
        return cls.from_cap(cap)

    def check_terms(self, count, what="polynomial"):
        if count > self.terms:
            raise CapacityError("%s needs %d terms, capacity is %d" % (what, count, self.terms))

    def check_entries(self, count, what="matrix"):
        if count > self.entries:
            raise CapacityError("%s needs %d entries, capacity is %d" % (what, count, self.entries))

    def check_candidates(self, count, what="candidate set"):
        if count > self.candidates:
            raise CapacityError("%s needs %d candidates, capacity is %d" % (what, count, self.candidates))

    def as_dict(self):
        return {'terms': self.terms, 'entries': self.entries, 'candidates': self.candidates}

    def __repr__(self):
        return "Capacity(terms=%d, entries=%d, candidates=%d)" % (self.terms, self.entries, self.candidates)

_current = []

def current():
    """Capacity in effect: innermost :func:`override`, else the environment."""
    if _current:
        return _current[-1]
    return Capacity.from_env()

def resolve(capacity=None):
    if capacity is None:
        return current()
    return capacity

@contextlib.contextmanager
def override(capacity):
    if not isinstance(capacity, Capacity):
        capacity = Capacity.from_cap(capacity)
    _current.append(capacity)
    try:
        yield capacity
    finally:
        _current.pop()
