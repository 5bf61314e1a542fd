"""Exception types shared across the toolkit."""


class LhomError(Exception):
    """Base class for toolkit errors."""


class FormatError(LhomError):
    """Malformed input file."""


class BudgetExceededError(LhomError):
    """An exhaustive search or enumeration exceeded its configured budget."""


class CertificationError(LhomError):
    """A constructed object failed its exhaustive certification check."""
