from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )

class LRUNode(object):
    __slots__ = ('next', 'prev', 'key', 'value', 'nbytes', 'empty')

    def __init__(self):
        self.next = None
        self.prev = None
        self.key = None
        self.value = None
        self.nbytes = 0
        self.empty = True

sentinel = object()

def value_nbytes(value):
    if isinstance(value, tuple):
        return sum(value_nbytes(v) for v in value)
    return getattr(value, 'nbytes', 0)

class LRUCacheDict(object):
    """
    Fixed slot LRU dict for index tables. Besides the slot count the cache
    holds at most ``max_bytes`` of array data; older entries are dropped
    until a new one fits.
    """

    def __init__(self, size=64, max_bytes=256 * 1024 * 1024):
        self.data = {}
        self.max_bytes = max_bytes
        self.total_bytes = 0

        # circular double link list
        self.head = LRUNode()
        self.head.next = self.head
        self.head.prev = self.head

        for i in range(size - 1):
            node = LRUNode()
            node.next = self.head
            node.prev = self.head.prev

            self.head.prev.next = node
            self.head.prev = node

    def make_first(self, node):
        node.prev.next = node.next
        node.next.prev = node.prev

        node.prev = self.head.prev
        node.next = self.head.prev.next

        node.next.prev = node
        node.prev.next = node

    def clear_node(self, node):
        if node.empty:
            return
        del self.data[node.key]
        self.total_bytes -= node.nbytes
        node.empty = True
        node.key = None
        node.value = None
        node.nbytes = 0

    def __contains__(self, key):
        return key in self.data

    def __len__(self):
        return len(self.data)

    def __setitem__(self, key, value):
        nbytes = value_nbytes(value)
        if key in self.data:
            self.clear_node(self.data[key])

        # too big to ever fit, don't flush everything else for it
        if nbytes > self.max_bytes:
            return

        node = self.head.prev
        self.clear_node(node)

        # walk back from the oldest node until the budget allows the new entry
        victim = node.prev
        while self.total_bytes + nbytes > self.max_bytes and victim is not node:
            self.clear_node(victim)
            victim = victim.prev

        node.empty = False
        node.key = key
        node.value = value
        node.nbytes = nbytes
        self.total_bytes += nbytes

        self.head = node
        self.data[key] = node

    def __getitem__(self, key):
        value = self.get(key, sentinel)
        if value is sentinel:
            raise KeyError(key)
        return value

    def get(self, key, default=None):
        node = self.data.get(key, sentinel)
        if node is sentinel:
            return default

        self.make_first(node)
        self.head = node

        return node.value

    def __delitem__(self, key):
        node = self.data[key]
        self.clear_node(node)
        self.make_first(node)
        self.head = node.next
