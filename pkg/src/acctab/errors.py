from __future__ import annotations


class ParseError(ValueError):
    """Markup could not be turned into a table.

    ``line`` is 1-based and refers to the source text, or is ``None``
    when the problem is not tied to a line.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.message = message
        self.line = line

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"line {self.line}: {self.message}"


class NoConsistentSeparator(ParseError):
    pass


class EmptyBody(ParseError):
    pass


class DanglingMerge(ParseError):
    pass


class RaggedRow(ParseError):
    def __init__(self, message: str, line: int | None = None, row: int | None = None):
        super().__init__(message, line)
        self.row = row


class DuplicateDirective(ParseError):
    pass


class BadDirective(ParseError):
    pass


class OutOfBounds(IndexError):
    pass
