"""Exception hierarchy shared by the deciders, the lattice lab and the CLI."""


class SharpConvError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SharpConvError, ValueError):
    """An index lies outside the range a decider or operation accepts."""


class ParseError(SharpConvError, ValueError):
    """Text could not be read as an exponent or a rational weight."""


class BudgetError(SharpConvError):
    """A computation would exceed the configured cell limit."""


class GridError(SharpConvError):
    """A quadrature grid is too coarse for the requested probe."""


class DegenerateInput(SharpConvError, ValueError):
    """A norm ratio has a vanishing denominator."""


class Unsupported(SharpConvError):
    """No extremal construction is implemented for this index pattern."""
