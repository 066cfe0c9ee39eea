"""Exception hierarchy.  Every error raised on bad user input derives from
:class:`AcertError` so the CLI can map it to an exit code."""


class AcertError(Exception):
    """Base class for all library errors."""


class InputError(AcertError, ValueError):
    """Malformed or inconsistent user input."""


class ElementSyntaxError(InputError):
    """Polynomial text that does not match the element grammar."""

    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")


class IndexOutOfRange(InputError):
    pass


class SignatureMismatch(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotDivisible(AcertError, ArithmeticError):
    pass


class DivisionByZero(AcertError, ZeroDivisionError):
    pass


class IncompatibleComplex(InputError):
    """A differential composition (or compatibility with a presentation) fails."""


class ZeroModuleError(AcertError, ValueError):
    pass


class InvalidSelection(InputError):
    pass


class LengthExceedsDimension(InputError):
    pass


class MissingAssertion(InputError):
    pass


class WrongCount(InputError):
    pass


class InvariantViolation(AcertError):
    pass


class LiftFailed(AcertError):
    pass


class BracketClosureFailed(AcertError):
    pass


class CompositionNonzero(AcertError):
    pass


class NotFree(AcertError):
    """No Saito basis could be extracted from the logarithmic derivations."""


class InternalInconsistency(AcertError):
    """Two computations that must agree by theory disagree.  Always a bug."""

    def __init__(self, message, details=None):
        self.details = details or {}
        super().__init__(message)


class TruncatedResolution(AcertError):
    pass


class ResourceLimitExceeded(AcertError):
    """The degree guard or the time budget tripped."""

    def __init__(self, message, diagnostics=None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)
