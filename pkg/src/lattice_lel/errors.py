"""Exception types raised across the package."""


class LatticeLelError(Exception):
    """Base class for every error this package raises on purpose."""


class InvalidSizeError(LatticeLelError, ValueError):
    pass


class MissingEdgeError(LatticeLelError, KeyError):
    pass


class ContainmentError(LatticeLelError, ValueError):
    """A graph expected to be a (spanning) subgraph is not one."""


class NoClosedFormError(LatticeLelError, NotImplementedError):
    pass


class CapacityError(LatticeLelError, ValueError):
    pass


class ShapeError(LatticeLelError, ValueError):
    pass


class InvalidSpectrumError(LatticeLelError, ValueError):
    pass


class InvariantError(LatticeLelError, AssertionError):
    """An internal consistency check or a checked inequality failed."""
