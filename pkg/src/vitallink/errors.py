"""Exception types shared across the package."""


class VitalLinkError(Exception):
    """Base class for all errors raised by vitallink."""


class InputError(VitalLinkError, ValueError):
    """Raised when an argument violates an operation's precondition."""


class LinkageError(VitalLinkError):
    """A path collection is not a linkage of the host graph.

    ``kind`` is one of ``"broken path"``, ``"overlap"`` or ``"empty path"``.
    """

    def __init__(self, kind, message):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


class DecompositionError(VitalLinkError):
    """A tree decomposition fails validation.

    ``kind`` names the violated condition: ``"uncovered vertex"``,
    ``"uncovered edge"``, ``"disconnected occurrence"``, ``"not a tree"``,
    ``"not a path"`` or ``"unknown vertex"``.
    """

    def __init__(self, kind, message):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


class CertificateError(VitalLinkError):
    """A grid certificate or chord property does not hold."""


class ResourceLimitError(VitalLinkError):
    """A computation was refused or aborted because it exceeds a budget."""
