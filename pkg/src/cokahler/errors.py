"""Exceptions shared across the package."""


class StructureError(ValueError):
    """Raised when input data violates a structural precondition:
    mismatched algebras, degree errors, non-chain maps, failed hypotheses."""


class ModelParseError(ValueError):
    """Raised by the model-file loader; carries a location diagnostic."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if field is not None:
            loc.append(f"field '{field}'")
        super().__init__(f"{message} ({', '.join(loc)})" if loc else message)
        self.line = line
        self.field = field
