"""
Utilities: validation, formatting, files and logging
"""
from .file_utils import FileManager
from .format_utils import FormatParser, TableWriter, DotWriter
from .logger import attach_to_log, set_log_level
from .validation import (
    ValidationError, LatticeError, FlopError, CurveStructureError,
    UncoveredCaseError, InconsistencyError, DocumentError,
    InputValidator, StateValidator, ConfigValidator
)

__all__ = [
    'FileManager',
    'FormatParser',
    'TableWriter',
    'DotWriter',
    'attach_to_log',
    'set_log_level',
    'ValidationError',
    'LatticeError',
    'FlopError',
    'CurveStructureError',
    'UncoveredCaseError',
    'InconsistencyError',
    'DocumentError',
    'InputValidator',
    'StateValidator',
    'ConfigValidator',
]
