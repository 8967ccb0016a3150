"""Exception types shared across the package."""


class RcgsError(Exception):
    """Base class for all errors raised by :mod:`rcgs`."""


class InvalidArgument(RcgsError, ValueError):
    pass


class UnknownState(RcgsError, LookupError):
    def __init__(self, state):
        super().__init__(f"unknown state {state!r}")
        self.state = state


class ValidationError(RcgsError, ValueError):
    """A formula or model refers to something the model does not have."""


class FormulaSyntaxError(RcgsError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ModelSyntaxError(RcgsError, ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ResourceLimit(RcgsError, RuntimeError):
    """An explicit enumeration would exceed the configured bound."""

    def __init__(self, message: str, count: int, limit: int):
        super().__init__(message)
        self.count = count
        self.limit = limit
