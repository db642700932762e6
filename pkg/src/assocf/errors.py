"""Shared exception types."""


class ParseError(ValueError):
    """Malformed textual input.

    ``location`` is a 0-based character position for single-line inputs
    and a 1-based line number for file formats.
    """

    def __init__(self, message, location=None):
        if location is not None:
            message = f"{message} (at {location})"
        super().__init__(message)
        self.location = location


class BudgetExceeded(RuntimeError):
    """A search or enumeration hit its configured cost guard."""
