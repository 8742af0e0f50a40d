"""
Database package: result file storage
"""

from .storage import CSVStorage, JSONStorage, StorageInterface
from .repository import ResultsRepository

__all__ = [
    "StorageInterface",
    "JSONStorage",
    "CSVStorage",
    "ResultsRepository",
]
