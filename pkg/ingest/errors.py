"""Ingestion errors"""
from typing import Optional


class SeriesValidationError(ValueError):
    """A decile series violates count, order or finiteness"""


class DecileFormatError(ValueError):
    """Malformed decile or CPI file; names the offending line and field"""

    def __init__(self, message: str, line: int, field: Optional[str] = None):
        self.line = line
        self.field = field
        where = f"line {line}" if field is None else f"line {line}, field '{field}'"
        super().__init__(f"{where}: {message}")


class MissingCpiYearError(ValueError):
    """Deflation needs a CPI value that is not in the series"""
