"""Exception types shared across the library.

The CLI maps these onto exit codes: bad bundle data is exit 1, unparsable
text is exit 2, and a failed internal certificate check is exit 3.
"""


class ParseError(ValueError):
    """Input text does not match the bundle/matrix grammar."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class InvalidBundle(ValueError):
    """Transition matrix is not invertible away from 0 and infinity.

    Raised when the determinant is not of the form c*z^e with c != 0.
    """


class DimensionMismatch(ValueError):
    """Matrix shapes are incompatible for the requested operation."""


class NotUnimodularlyCompletable(ValueError):
    """Column cannot be the first column of a unimodular matrix.

    The components share a non-unit factor, so the column vanishes
    somewhere on the chart.
    """


class InternalCheckError(AssertionError):
    """Base class for failed runtime certificates.

    These indicate an implementation bug or an undersized truncation
    window, never bad user input.
    """


class WindowUnstable(InternalCheckError):
    """Cohomology dimension changed when the truncation window grew."""


class SearchExhausted(InternalCheckError):
    """Minimal-twist search left its guaranteed bracket."""


class SectionVanishes(InternalCheckError):
    """A section expected to vanish nowhere has a common zero."""


class QuotientDegreePositive(InternalCheckError):
    """A quotient line-bundle degree came out positive mid-recursion."""
