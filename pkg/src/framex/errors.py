"""Exception hierarchy shared by all framex modules."""


class FramexError(Exception):
    """Base class for all framex errors."""


class SizeExceeded(FramexError):
    """A desk-scale guard was violated (use force=True / --force to override)."""


class NotACycle(FramexError):
    """An edge set expected to be a simple cycle is not one."""


class EdgeInTree(FramexError):
    pass


class DisconnectedEndpoints(FramexError):
    pass


class LabelCountMismatch(FramexError):
    pass


class NotABase(FramexError):
    pass


class ElementInBase(FramexError):
    pass


class ElementNotInBase(FramexError):
    pass


class NoWitness(FramexError):
    """An exchange witness required by matroid axioms could not be found.

    Raising this signals an internal-consistency failure, never a valid
    outcome on a correct oracle.
    """


class LengthMismatch(FramexError):
    pass


class NotCompatible(FramexError):
    pass


class PreconditionViolated(FramexError):
    pass


class BalancedLoopPresent(FramexError):
    """The construction requires a biased graph without balanced loops."""


class NotVReduced(FramexError):
    pass


class EmptyPullback(FramexError):
    pass


class StemLoop(FramexError):
    pass


class NoInducedChoice(FramexError):
    pass


class NotAmenable(FramexError):
    pass


class NotSwitchable(FramexError):
    pass


class ContainsEBMove(FramexError):
    pass


class CertificateError(FramexError):
    """A certificate failed to parse or replay."""


class ParseError(FramexError):
    """An instance file failed validation; carries a human-readable position."""


class BudgetExceeded(FramexError):
    """A bounded search ran out of budget with work remaining (inconclusive)."""


class SearchLimit(FramexError):
    """A search hit its node limit before reaching a verdict."""
