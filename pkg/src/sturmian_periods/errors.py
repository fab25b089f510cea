"""Exception hierarchy shared by all modules."""


class SturmianError(Exception):
    """Base class for every error raised by this package."""


class SlopeParseError(SturmianError, ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class SlopeNormalizationError(SturmianError, ValueError):
    """Raised for a slope with a_1 = 1, which is outside (0, 1/2)."""


class InsufficientExpansion(SturmianError):
    """Certified refinement ran past the known (or permitted) partial quotients."""


class NotAFactor(SturmianError, ValueError):
    pass


class EnumerationCapExceeded(SturmianError):
    pass


class BackendMismatch(SturmianError):
    """Two independent word generators disagreed. Always a bug."""


class HorizonTooSmall(SturmianError):
    pass


class PreconditionFailed(SturmianError, ValueError):
    pass


class FormulaExceeded(SturmianError):
    """A scanned exponent went above the closed-form maximum. Always a bug."""


class UnknownScenario(SturmianError, KeyError):
    pass


# Errors that mean "could not decide" rather than "claim is false".
INCONCLUSIVE = (InsufficientExpansion, EnumerationCapExceeded, HorizonTooSmall)
