"""Exception hierarchy. Every error carries a stable machine-readable code."""


class VocabForgeError(Exception):
    """Base class; ``code`` is stable across releases."""

    code = "ERROR"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code

    @property
    def message(self):
        return self.args[0]


class TurtleSyntaxError(VocabForgeError, ValueError):
    """Raised by the Turtle parser; carries a 1-based line and column."""

    code = "TURTLE_SYNTAX"

    def __init__(self, message, line, column, code=None):
        super().__init__(f"{message} (line {line}, column {column})", code)
        self.reason = message
        self.line = line
        self.column = column


class ModelError(VocabForgeError, ValueError):
    """A graph does not describe a well-formed vocabulary object."""

    code = "MODEL_ERROR"


class EditorialError(VocabForgeError, ValueError):
    """An editorial operation was refused."""

    code = "EDITORIAL_ERROR"


class UriError(VocabForgeError, ValueError):
    """A path does not belong to the vocabulary URI space."""

    code = "UNKNOWN_PATTERN"
