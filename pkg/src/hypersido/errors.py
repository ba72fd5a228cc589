"""Exception types shared across the package."""


class HypersidoError(Exception):
    """Base class for all package errors."""


class InvalidInput(HypersidoError, ValueError):
    """Malformed hypergraph, kernel, parameter or file."""


class ResourceLimit(HypersidoError):
    """An enumeration or evaluation would exceed its configured budget."""


class Inconclusive(HypersidoError):
    """A one-directional search finished without producing a witness.

    ``reason`` is a short machine-readable tag such as
    ``"criterion_inconclusive"`` or ``"epsilon_search_exhausted"``.
    """

    def __init__(self, reason, message=""):
        super().__init__(f"{reason}: {message}" if message else reason)
        self.reason = reason
