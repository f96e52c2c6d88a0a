"""Exception hierarchy shared by every module of the package."""


class EvidenceLogicError(Exception):
    """Base class for all errors raised by this package."""


class FormulaSyntaxError(EvidenceLogicError, ValueError):
    """Malformed formula text.

    ``offset`` is the byte offset of the offending token and ``expected`` the
    set of token kinds that would have been accepted there.
    """

    def __init__(self, message, text, offset, expected=()):
        self.text = text
        self.offset = offset
        self.expected = frozenset(expected)
        detail = message
        if self.expected:
            detail += " (expected one of: %s)" % ", ".join(sorted(self.expected))
        super().__init__("%s at offset %d" % (detail, offset))


class ModelError(EvidenceLogicError, ValueError):
    """A model violates its invariants or references unknown ids.

    ``path`` points into the model document (JSON-pointer style) when the
    model came from one.
    """

    def __init__(self, message, path=""):
        self.path = path
        super().__init__("%s: %s" % (path, message) if path else message)


class ScenarioError(EvidenceLogicError, ValueError):
    """A (world, evidence[, belief]) triple is not a legal point of evaluation."""


class LanguageError(EvidenceLogicError, ValueError):
    """A formula uses an operator the model class or logic cannot interpret."""


class BoundError(EvidenceLogicError, ValueError):
    """A search or enumeration bound lies outside the configured range."""
