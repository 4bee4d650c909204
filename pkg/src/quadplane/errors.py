"""Exception hierarchy shared by every module."""


class QuadPlaneError(Exception):
    """Base class for all library errors."""


class MalformedInput(QuadPlaneError, ValueError):
    """Input text or JSON could not be parsed into exact values."""


class DivisionByZero(QuadPlaneError, ZeroDivisionError):
    pass


class PreconditionError(QuadPlaneError, ValueError):
    """An operation was called outside its documented domain."""


class DegenerateFiber(QuadPlaneError):
    """The preimage of a target contains a curve (resultant vanishes identically)."""


class NotInvertibleError(QuadPlaneError):
    pass


class CertificateDisagreement(QuadPlaneError):
    """A closed-form certificate contradicts the Sturm oracle. Should never happen."""
