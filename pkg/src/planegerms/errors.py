"""Exception hierarchy.

Everything raised on purpose by the package derives from :class:`GermError`
so the CLI can map it to the input-error exit code.
"""

from __future__ import annotations


class GermError(Exception):
    """Base class for all package errors."""


class InsufficientOrder(GermError):
    """A computation needs more jet order than the input carries."""

    def __init__(self, needed: int, have: int, what: str = ""):
        self.needed = needed
        self.have = have
        self.what = what
        msg = f"need jet order >= {needed}, have {have}"
        if what:
            msg += f" (for {what})"
        super().__init__(msg)


class JetDomainError(GermError):
    """Substituting a series with nonzero constant term, or similar."""


class NotAUnit(GermError):
    pass


class NotInvertible(GermError):
    pass


class NotApplicable(GermError):
    """The operation does not apply to this germ (e.g. corank is not one)."""


class ContractViolation(GermError):
    """A caller broke a documented precondition."""


class AssumptionViolated(GermError):
    """A Monge form or viewpoint violates the standing assumptions of a case."""

    def __init__(self, assumption: str):
        self.assumption = assumption
        super().__init__(f"standing assumption violated: {assumption}")


class InputError(GermError):
    """Malformed JSON or expression input."""
