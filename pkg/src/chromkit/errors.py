"""Exception hierarchy shared by all chromkit modules."""


class ChromkitError(Exception):
    """Base class for all errors raised by chromkit."""


class DomainError(ChromkitError):
    """Arguments are individually valid but mutually incompatible.

    Raised for mismatched ground sets, mixed basis tags, bad set covers
    and similar contract violations.
    """


class ValidationError(ChromkitError):
    """A combinatorial object fails its structural invariants."""


class SizeCapError(ChromkitError):
    """An input exceeds the documented desk-scale size cap."""
