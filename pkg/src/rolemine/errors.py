"""Shared exception types."""


class FormatError(ValueError):
    """An input file does not conform to its documented format.

    Subclasses identify the offending format; the CLI maps any FormatError
    to the input-format exit code.
    """
