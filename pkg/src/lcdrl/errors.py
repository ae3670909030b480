"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Operand dimensions are incompatible with the requested operation."""


class FieldError(ValueError):
    """Field order is unsupported or operands live in different fields."""


class MatrixParseError(ValueError):
    """A matrix or code file is malformed. Carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EnumerationCapError(RuntimeError):
    """A brute-force enumeration would exceed the configured cap."""


class NumericError(RuntimeError):
    """A gradient or loss became non-finite; the pending update was discarded."""
