"""Exceptions raised by configuration operations"""
from typing import Optional


class ConfigurationError(ValueError):
    """Base class for all configuration errors"""


class DomainError(ConfigurationError):
    """Parameters outside the mathematical domain of an operation"""


class CapacityError(ConfigurationError):
    """Input exceeds the desk-scale limits of an exhaustive search"""


class StructuralError(ConfigurationError):
    """Structure lacks the automorphism a symmetric construction needs"""


class ConstructionError(ConfigurationError):
    """A geometric construction could not be completed"""

    def __init__(self, message: str, diagnostics: Optional[dict] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class TableFormatError(ConfigurationError):
    """Malformed table file, with the location of the problem"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(f"{location}{message}")
        self.line = line
        self.column = column
