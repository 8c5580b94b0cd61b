"""Exception hierarchy.

Every error carries a stable ``code`` string used verbatim by the CLI
(exit-code mapping) and the HTTP service (JSON error bodies), so the
wire-visible identifiers stay fixed even if exception class names change.
"""

from __future__ import annotations


class HistoscopeError(Exception):
    """Base class for all errors raised by this package."""

    code = "Error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


# --- ingestion -----------------------------------------------------------

class UnsupportedFormatError(HistoscopeError):
    """File is not one of the five supported raster formats (or is a
    non-baseline TIFF variant)."""

    code = "UnsupportedFormat"


class SixteenBitColorError(HistoscopeError):
    """16-bit image with more than one channel; must be converted to
    grayscale externally before it can be opened."""

    code = "SixteenBitColor"


class CorruptFileError(HistoscopeError):
    """Recognized format, but the file contents cannot be decoded."""

    code = "CorruptFile"


class UnsupportedDepthError(HistoscopeError):
    """Sample depth outside {8, 16} bits (e.g. 32-bit float TIFF)."""

    code = "UnsupportedDepth"


class CsvError(HistoscopeError):
    """Base class for CSV table ingestion errors."""

    code = "CsvError"


class RaggedRowsError(CsvError):
    code = "RaggedRows"


class NonIntegerValueError(CsvError):
    code = "NonIntegerValue"


class OutOfDomainError(CsvError):
    code = "OutOfDomain"


class EmptyTableError(CsvError):
    code = "EmptyTable"


# --- histogram statistics ------------------------------------------------

class RangeOutOfDomainError(HistoscopeError):
    """Intensity range exceeds the histogram's domain."""

    code = "RangeOutOfDomain"


class EmptyRangeError(HistoscopeError):
    """Mean requested over a range containing zero pixels."""

    code = "EmptyRange"


# --- workspace ------------------------------------------------------------

class OverlayLimitExceededError(HistoscopeError):
    code = "OverlayLimitExceeded"


class DepthMismatchError(HistoscopeError):
    code = "DepthMismatch"


class NonIntegerRangeError(HistoscopeError):
    """Range bounds must be integers."""

    code = "NonInteger"


class InvalidLimitError(HistoscopeError):
    code = "InvalidLimit"


# --- rendering ------------------------------------------------------------

class CanvasTooSmallError(HistoscopeError):
    code = "CanvasTooSmall"
