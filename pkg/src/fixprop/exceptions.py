"""Exception hierarchy shared by all fixprop modules."""


class FixpropError(Exception):
    """Base class for every error raised by this package."""


class ArityError(FixpropError, ValueError):
    pass


class DomainError(FixpropError, ValueError):
    """A value lies outside the domain (or universe) it was declared in."""


class ContractViolation(FixpropError, AssertionError):
    """A function or update rule broke one of the contracts the engines rely on.

    ``assumption`` names what was broken: ``"A"``, ``"B"``, ``"C"``,
    ``"I"`` (loop invariant), ``"termination"`` or ``"inflationary"``.
    """

    def __init__(self, message, assumption=None):
        super().__init__(message)
        self.assumption = assumption


class SemiCommutativityError(ContractViolation):
    pass


class ConfigurationError(FixpropError, ValueError):
    pass


class StandardizationError(FixpropError, ValueError):
    pass


class OrderingError(FixpropError, ValueError):
    pass


class CapacityError(FixpropError, RuntimeError):
    """An exhaustive enumeration would exceed its configured state cap."""


class ParseError(FixpropError, ValueError):
    """Malformed CSP text. ``line`` is 1-based."""

    def __init__(self, message, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class UnknownVariableError(ParseError):
    pass


class VariableOrderError(ParseError):
    pass


class TupleArityError(ParseError):
    pass


class AtomOutsideDomainError(ParseError):
    pass
