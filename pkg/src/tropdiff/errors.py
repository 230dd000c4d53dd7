"""Exception hierarchy for tropdiff.

Every error raised on purpose by the library derives from TropdiffError so
that the command line can map domain failures to exit code 1.
"""


class TropdiffError(Exception):
    """Base class for domain errors."""


class NegativePowerOfT(TropdiffError):
    """Dividing a series by t^k would leave a negative power of t."""


class EmptyPrecision(TropdiffError):
    """A computation lost every known coefficient to truncation."""


class VariableCountMismatch(TropdiffError):
    pass


class MissingWeight(TropdiffError):
    pass


class UncertifiedValuation(TropdiffError):
    """A coefficient is zero inside its truncation window, so its valuation is unknown."""


class InternalInvariantViolation(TropdiffError):
    pass


class InfiniteTropValue(TropdiffError):
    pass


class PostconditionFailure(TropdiffError):
    pass


class UniverseMismatch(TropdiffError):
    pass


class NotASolution(TropdiffError):
    pass


class BadDimension(TropdiffError):
    pass


class NotLinearForm(TropdiffError):
    pass


class BadPair(TropdiffError):
    pass


class NaturalPole(TropdiffError):
    """The Denef-Lipshitz series has a zero denominator."""


class VariableIndexError(TropdiffError):
    pass


class ParseError(TropdiffError):
    """Input text does not match the expression or set grammar."""

    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        self.line, self.column = _line_col(text, pos)
        super().__init__(f"{message} at line {self.line}, column {self.column}")


class UnknownCommand(TropdiffError):
    pass


def _line_col(text, pos):
    before = text[:pos]
    line = before.count("\n") + 1
    column = pos - (before.rfind("\n") + 1) + 1
    return line, column
