"""Exception hierarchy shared by every laperm module."""


class LapermError(Exception):
    """Base class for all library errors."""


class DisconnectedInput(LapermError):
    pass


class NotATree(LapermError):
    pass


class NotUnicyclic(LapermError):
    pass


class NotBipartite(LapermError):
    pass


class SizeBound(LapermError):
    """An input exceeds a configured size bound."""


class InvalidParameters(LapermError):
    """Family or formula parameters violate a stated constraint."""


class PreconditionViolated(LapermError):
    """A grafting move was requested on a subject that does not qualify.

    ``clause`` names the failed condition so callers can report it.
    """

    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        super().__init__(f"{clause}: {detail}" if detail else clause)


class OrderMismatch(LapermError):
    pass


class ParseError(LapermError):
    """Malformed text input; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
