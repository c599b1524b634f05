"""Exception hierarchy shared by every blchang module."""


class BLError(Exception):
    """Base class for all errors raised by blchang."""


class EncodingError(BLError, ValueError):
    """A value is not a canonical element of the chain it was used with."""


class UnsupportedOperation(BLError, TypeError):
    """The operation needs a bottom element but the chain is an unbounded hoop."""


class ConstructionError(BLError, ValueError):
    """A chain descriptor describes a structure that cannot be built."""


class DescriptorSyntaxError(BLError, ValueError):
    """Algebra descriptor text could not be parsed."""


class ParseError(BLError, ValueError):
    """Formula or equation text could not be parsed.

    Carries the offending ``position`` (0-based character offset) and the
    set of token kinds that would have been accepted there.
    """

    def __init__(self, message, text="", position=0, expected=()):
        self.message = message
        self.text = text
        self.position = position
        self.expected = frozenset(expected)
        detail = message
        if expected:
            detail += " (expected one of: " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(f"{detail} at position {position}")


class EvaluationError(BLError, ValueError):
    """A formula or term mentions a variable with no assignment."""


class StrategyError(BLError, ValueError):
    """A valuation source cannot be used with the requested chain."""


class ArgumentError(BLError, ValueError):
    """An argument is outside the range an operation accepts."""
