"""Exception taxonomy.

Each class maps to one CLI exit code family (see cli module); library
callers can catch ``CaptransError`` for anything raised deliberately.
"""


class CaptransError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CaptransError):
    """Mathematically invalid input: negative mass, mass mismatch,
    divisibility violation, out-of-range tolerance, and similar."""


class DimensionError(CaptransError):
    """Containers whose shapes do not line up."""


class ModeError(CaptransError):
    """Exact mode received a value it cannot represent exactly."""


class FileFormatError(CaptransError):
    """A problem/plan/certificate file that cannot be parsed."""


class InstanceTooLargeError(CaptransError):
    """The dense oracle refuses instances beyond its size guard."""


class SolverStallError(CaptransError):
    """Float-mode solve made no progress beyond the anti-cycling bound."""


class ResourceError(CaptransError):
    """Exact-mode arithmetic exceeded a representable magnitude."""
