"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`PSKError`,
so callers (and the CLI) can map failures to exit codes without catching
unrelated bugs.
"""


class PSKError(Exception):
    """Base class for all package errors."""


class InvalidInput(PSKError, ValueError):
    """A value violates the invariants of its type."""


class NotTransitiveTournament(PSKError):
    pass


class TooSmall(PSKError):
    pass


class Unrooted(PSKError):
    pass


class NotSimple(PSKError):
    pass


class NormalizationStuck(PSKError):
    """Local improvement reached a fixed point that fails verification."""


class PreconditionViolated(PSKError):
    pass


class InvalidTrace(PSKError):
    pass


class WidthExceeded(PSKError):
    pass


class NotAClique(PSKError):
    pass


class NotDiagonal(PSKError):
    pass


class ProjectionsNotTransitive(PSKError):
    pass


class NotOuterplanar(PSKError):
    pass


class InvariantBroken(PSKError):
    """An invariant checked in ``check_invariants`` mode failed."""


class ArityMismatch(PSKError):
    pass


class NotAPartition(PSKError):
    pass


class ParameterRange(PSKError):
    pass


class LimitExceeded(PSKError):
    """Base for size / budget walls (CLI exit code 3)."""


class Explosion(LimitExceeded):
    pass


class TooLarge(LimitExceeded):
    pass


class BudgetTooLarge(LimitExceeded):
    pass
