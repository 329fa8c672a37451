from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )

# replaced by the metadata stamped in at build time
__version__ = "dev"

from .poly import MultiIndex, HomogPoly, SymMatRep, orbit_size
from .decompose import FoldedPoly, MultilinearParts
from .rounding import optimize
from .oracle import brute_norm2
from . import config
