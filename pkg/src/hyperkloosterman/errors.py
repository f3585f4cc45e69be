"""Exception hierarchy shared by every module."""


class HyperKError(Exception):
    """Base class; ``code`` is the machine-readable tag used by the CLI."""

    code = "error"


class NonPrime(HyperKError, ValueError):
    code = "NonPrime"


class TooSmall(HyperKError, ValueError):
    code = "TooSmall"


class TooLarge(HyperKError, ValueError):
    """An enumeration or grid would exceed its size guard."""

    code = "TooLarge"


class ZeroM(HyperKError, ValueError):
    code = "ZeroM"


class BadU(HyperKError, ValueError):
    code = "BadU"


class NoClosedForm(HyperKError, ValueError):
    code = "NoClosedForm"


class Unsupported(HyperKError, ValueError):
    code = "Unsupported"


class NonIntegral(HyperKError, ArithmeticError):
    """An exact division left a remainder. Indicates a formula bug."""

    code = "NonIntegral"
