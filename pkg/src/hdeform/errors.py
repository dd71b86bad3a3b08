"""Exception types raised across the package."""


class DivisionByZero(ZeroDivisionError):
    pass


class PoleAtOne(ArithmeticError):
    """A scalar was evaluated at q = 1 while its denominator vanishes there."""


class ParseError(ValueError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownGenerator(ValueError):
    pass


class AlphabetMismatch(ValueError):
    pass


class MissingImage(KeyError):
    pass


class StepLimitExceeded(RuntimeError):
    """Rewriting did not terminate within the configured number of steps."""


class InvalidRule(ValueError):
    pass


class NonInvertibleDerivation(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class ExtractionFailure(ValueError):
    pass
