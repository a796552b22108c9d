"""Exception types shared across the library."""


class ShiftRankError(Exception):
    """Base class for all library errors."""


class BadLetter(ShiftRankError):
    """A letter is outside the configured alphabet."""


class BadConfig(ShiftRankError):
    """Invalid system or field configuration."""


class DivisionByZero(ShiftRankError):
    """Zero denominator in a scalar literal, or zero divisor in a field."""


class ExprSyntaxError(ShiftRankError):
    """Expression text does not conform to the grammar.

    Carries the 0-based character position of the offending token.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ZeroEvaluationPoint(ShiftRankError):
    """Laurent evaluation at t = 0 is not defined."""


class LevelTooSmall(ShiftRankError):
    """Truncation level is below the radius of the element."""


class LevelMismatch(ShiftRankError):
    """Objects from incompatible tower levels were combined."""


class IndexOutOfRange(ShiftRankError):
    """Matrix-unit index outside 0..|W|-1."""


class MalformedSegment(ShiftRankError):
    """Occurrence segment violates the cell-word or sign constraints."""
