"""Exception hierarchy shared by every module."""


class QuotlabError(Exception):
    """Base class."""


class StructuralError(QuotlabError):
    """Malformed input: mismatched parents, unknown variables, bad shapes."""


class UnsupportedBaseError(QuotlabError):
    """The base ring lacks the structure an algorithm needs."""


class ActionError(QuotlabError):
    """Group data or automorphism images violate an invariant."""


class PreconditionError(QuotlabError):
    """An operation was called outside the hypotheses it is stated under.

    The CLI reports these as *gated* rather than failed.
    """


class FrameworkBug(QuotlabError):
    """A check contradicted a proven statement; the computation is wrong."""
