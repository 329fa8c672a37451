from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )

class SpherexError(Exception):
    pass

class ConfigError(SpherexError):
    pass

class CapacityError(SpherexError):
    pass

class DimensionError(SpherexError, ValueError):
    pass

class DegreeError(SpherexError, ValueError):
    pass

class SymmetryError(SpherexError, ValueError):
    pass

class CoefficientError(SpherexError, ValueError):
    pass

class RepresentationError(SpherexError, ValueError):
    pass

class FormatError(SpherexError, ValueError):
    pass

class DegenerateInstanceError(SpherexError):
    pass

class CertificateError(DegenerateInstanceError):
    pass
