"""Error taxonomy shared by every horolab module.

Each error carries a stable machine-readable ``code`` so the service layer
and the CLI can emit structured error reports without string matching.
"""


class HorolabError(Exception):
    """Base class; ``code`` is stable across releases."""

    code = "error"

    def __init__(self, message, **detail):
        super().__init__(message)
        self.message = message
        self.detail = detail

    def to_json(self):
        return {"code": self.code, "message": self.message, "detail": self.detail}


class UndefinedValuationError(HorolabError):
    code = "undefined-valuation"


class ZeroDenominatorError(HorolabError):
    code = "zero-denominator"


class ExpansionAtPoleError(HorolabError):
    code = "expansion-at-pole"


class SingularPointError(HorolabError):
    code = "singular-point"


class NonIntegralDerivationError(HorolabError):
    code = "non-integral-derivation"


class PairingMismatchError(HorolabError):
    code = "pairing-mismatch"


class NoDataError(HorolabError):
    code = "no-data"


class InsufficientTruncationError(HorolabError):
    code = "insufficient-truncation"


class OverConstrainedError(HorolabError):
    code = "over-constrained"


class BoundTooSmallError(HorolabError):
    code = "bound-too-small"


class InconclusiveSearchError(HorolabError):
    code = "inconclusive-search"


class IncompleteHypothesesError(HorolabError):
    code = "incomplete-hypotheses"


class SingularityOnPathError(HorolabError):
    code = "singularity-on-path"


class StiffIntegrationError(HorolabError):
    code = "stiff-integration"


class RadiusTooSmallError(HorolabError):
    code = "r-too-small"


class SymbolicDomainError(HorolabError):
    code = "symbolic-domain"


class ExpressionSyntaxError(HorolabError):
    code = "syntax"

    def __init__(self, message, position, text=""):
        super().__init__(message, position=position, text=text)
        self.position = position
        self.text = text


class InputFormatError(HorolabError):
    code = "input-format"
