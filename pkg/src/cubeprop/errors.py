"""Exception hierarchy shared by every module."""


class CubepropError(Exception):
    pass


class CompositionError(CubepropError):
    """Raised when two cube morphisms are not composable."""


class ParseError(CubepropError):
    """Malformed text or JSON input; ``location`` names where it broke."""

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


class FunctorialityError(CubepropError):
    """A presheaf action table violates identity or composition laws."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NaturalityError(CubepropError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class TruncationError(CubepropError):
    """The truncation dimension is too small for the requested construction."""


class PreconditionError(CubepropError):
    pass


class NotStableError(PreconditionError):
    """No map from the double negation back into the object was found."""


class InvariantError(CubepropError):
    """An internal cross-check disagreed; indicates an implementation bug."""


class ClassificationError(CubepropError):
    def __init__(self, message, element=None):
        self.element = element
        super().__init__(message)


class PromiseViolation(CubepropError):
    """The caller promised a double-negated membership that turned out false."""


class InstanceTooLarge(CubepropError):
    pass
