"""Exception types raised by constructions and parsers.

Validation operations report axiom failures through AxiomReport instead of
raising; these exceptions are for inputs a construction cannot accept.
"""


class StructureError(ValueError):
    """Malformed or axiom-invalid input structure.

    Attributes:
        witness: Elements reproducing the problem, when there is one.
    """

    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


class StructureFileError(StructureError):
    """Structure file that does not match the schema.

    Attributes:
        field: Dotted path of the offending field, if known.
        line: 1-based source line, if known.
    """

    def __init__(
        self,
        message: str,
        field: str | None = None,
        line: int | None = None,
        witness: tuple | None = None,
    ):
        context = []
        if line is not None:
            context.append(f"line {line}")
        if field is not None:
            context.append(f"field '{field}'")
        prefix = f"{', '.join(context)}: " if context else ""
        super().__init__(prefix + message, witness=witness)
        self.field = field
        self.line = line


class HomomorphismError(ValueError):
    """A map fails to be a homomorphism of the required kind."""

    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(ValueError):
    """An operation was called outside its documented precondition."""


class CapExceededError(RuntimeError):
    """A size cap or enumeration budget would be exceeded.

    Attributes:
        limit: The configured bound.
        estimate: The size the request would need.
    """

    def __init__(self, message: str, limit: int, estimate: int):
        super().__init__(f"{message} (limit {limit}, estimate {estimate})")
        self.limit = limit
        self.estimate = estimate


class InvariantViolationError(AssertionError):
    """An internal self-check of a construction failed."""
