"""Exception hierarchy shared by the engine and the command line."""


class QPDError(Exception):
    """Base class for domain errors."""


class ParseError(QPDError):
    """Syntax error with a 1-based position and the set of tokens that would fit."""

    def __init__(self, message, line=1, column=1, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        super().__init__(str(self))

    def __str__(self):
        out = f"line {self.line}, column {self.column}: {self.message}"
        if self.expected:
            out += "; expected one of: " + " ".join(self.expected)
        return out


class UnknownGeneratorError(ParseError):
    pass


class DegenerateAlphaError(QPDError, ValueError):
    """``a1^2 + a2^2 + a3^2 = 0``, or a unit vector was required and not given."""


class SingularSystemError(QPDError, ZeroDivisionError):
    """A linear system expected to be regular has zero determinant."""


class EvaluationError(QPDError):
    """An expression is well formed but has no value (division by a non-unit, wrong algebra)."""
