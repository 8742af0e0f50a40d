"""
Core package: settings, exceptions and logging
"""

from .config import Settings, settings
from .exceptions import (
    AbortedRunError,
    BasisIncompleteError,
    ConfigError,
    DegenerateStateError,
    InvalidArgumentError,
    KrylovError,
    NumericalBreakdownError,
    ResourceLimitError,
    StorageError,
)
from .logging import configure_logging, get_logger

__all__ = [
    "Settings", "settings",
    "KrylovError", "InvalidArgumentError", "ResourceLimitError",
    "NumericalBreakdownError", "DegenerateStateError", "BasisIncompleteError",
    "AbortedRunError", "ConfigError", "StorageError",
    "configure_logging", "get_logger",
]
