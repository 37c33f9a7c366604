"""Exception hierarchy shared by all modules."""


class PlpError(Exception):
    """Base class for every error raised by plpkit."""


class ParseError(PlpError):
    def __init__(self, message: str, line: int = 0, col: int = 0, origin: str = "<string>"):
        self.line, self.col, self.origin = line, col, origin
        super().__init__(f"{origin}:{line}:{col}: {message}")


class ValidationError(PlpError):
    """Malformed ordered program (duplicate names, reserved predicates, ...)."""


class OrderError(ValidationError):
    """Cyclic preference order, or a program that is not statically ordered."""


class GroundingError(PlpError):
    pass


class ResourceLimitError(PlpError):
    """A configured guard (instantiations, extensions, rule universe) was exceeded."""


class NotAnswerSetError(PlpError):
    """An oracle was handed a candidate that is not an answer set."""
