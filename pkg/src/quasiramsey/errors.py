"""Exception types shared across the package."""


class QuasiRamseyError(Exception):
    pass


class SizeError(QuasiRamseyError, ValueError):
    """Input exceeds a configured size cap."""


class BudgetError(QuasiRamseyError, ValueError):
    """A computation would exceed its configured work budget."""


class DomainError(QuasiRamseyError, ValueError):
    """A numeric argument lies outside its mathematical domain."""


class UsageError(QuasiRamseyError, ValueError):
    """Arguments violate an operation's stated preconditions."""
