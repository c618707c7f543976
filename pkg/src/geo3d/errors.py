"""Exception hierarchy.

Every documented failure mode raises a subclass of :class:`Geo3DError` so that
callers (and the CLI) can distinguish bad input from genuine bugs.
"""


class Geo3DError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(Geo3DError):
    """An input file violates its documented format or invariants."""


class AnalysisError(Geo3DError):
    """An analysis operation was invoked outside its preconditions."""


class NoRouteError(Geo3DError):
    """No path exists between the requested network nodes."""


class GeocodeError(Geo3DError):
    """Address matching failed (empty query, empty library, no usable match)."""
