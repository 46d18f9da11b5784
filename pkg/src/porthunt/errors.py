"""Exception hierarchy shared across the package."""


class PortHuntError(Exception):
    """Base class for all errors raised by this package."""


class NoSuchPort(PortHuntError):
    """A port number exceeds the (finite) degree of a node."""


class UnknownNode(PortHuntError):
    """A node identifier does not belong to the graph."""


class ParseError(PortHuntError):
    """Malformed graph text."""


class InvalidPorts(PortHuntError):
    """A node's port set is not exactly 1..deg (duplicate or missing port)."""


class Disconnected(PortHuntError):
    """A finite graph failed its connectivity check."""


class UnknownFamily(PortHuntError):
    """Unknown builtin graph family name."""


class BadParams(PortHuntError):
    """Invalid parameters for a builtin graph family."""


class NotEnumerated(PortHuntError):
    """The path has no index in the requested enumeration mode."""


class CapExceeded(PortHuntError):
    """A brute-force search hit its value cap without an answer."""


class StepBudgetExceeded(PortHuntError):
    """The hunt agent ran out of its edge-traversal budget."""


class RoundBudgetExceeded(PortHuntError):
    """The rendezvous simulation ran out of rounds without a meeting."""


class NegativeWait(PortHuntError):
    """A bit plan would need a negative wait; signals a broken ordering."""


class PreconditionError(PortHuntError):
    """A caller violated an operation precondition (bad instance)."""
