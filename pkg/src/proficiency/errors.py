"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input violates a documented invariant."""


class ParseError(ValidationError):
    """A file could not be parsed; carries the position when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class StateSpaceOverflowError(OverflowError):
    """A state count or occupation count leaves the supported integer range."""


class EnumerationCapError(RuntimeError):
    """Brute-force enumeration was asked to walk more states than its cap."""


class UndefinedProficiencyError(ZeroDivisionError):
    """Proficiency requested for a zero-entropy source."""
