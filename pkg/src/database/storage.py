"""
Storage abstraction for emitted result files
"""

import json
import os
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

import pandas as pd

from src.core.exceptions import StorageError


class StorageInterface(ABC):
    """Abstract interface for one stored artifact"""

    def __init__(self, file_path: str):
        self.file_path = file_path

    def exists(self) -> bool:
        return os.path.exists(self.file_path)

    @abstractmethod
    def load(self) -> Optional[Any]:
        """Load the artifact, or None when it does not exist"""

    @abstractmethod
    def save(self, data: Any) -> None:
        """Write the artifact, replacing any previous content"""

    def _ensure_parent(self) -> None:
        parent = os.path.dirname(self.file_path)
        if parent:
            try:
                os.makedirs(parent, exist_ok=True)
            except OSError as exc:
                raise StorageError(f"cannot create directory ({exc.strerror})", parent) from exc


class JSONStorage(StorageInterface):
    """JSON document storage"""

    def load(self) -> Optional[Dict[str, Any]]:
        if not self.exists():
            return None
        try:
            with open(self.file_path, "r", encoding="utf-8") as f:
                return json.load(f)
        except json.JSONDecodeError as exc:
            raise StorageError(f"invalid JSON ({exc.msg})", self.file_path) from exc
        except OSError as exc:
            raise StorageError(f"cannot read ({exc.strerror})", self.file_path) from exc

    def save(self, data: Dict[str, Any]) -> None:
        self._ensure_parent()
        try:
            with open(self.file_path, "w", encoding="utf-8", newline="\n") as f:
                json.dump(data, f, indent=2, sort_keys=True, ensure_ascii=False)
                f.write("\n")
        except OSError as exc:
            raise StorageError(f"cannot write ({exc.strerror})", self.file_path) from exc


class CSVStorage(StorageInterface):
    """Comma-separated table storage with full double precision"""

    FLOAT_FORMAT = "%.17g"

    def load(self) -> Optional[pd.DataFrame]:
        if not self.exists():
            return None
        try:
            return pd.read_csv(self.file_path, float_precision="round_trip")
        except (OSError, pd.errors.ParserError) as exc:
            raise StorageError(f"cannot read table ({exc})", self.file_path) from exc

    def save(self, data: pd.DataFrame) -> None:
        self._ensure_parent()
        try:
            data.to_csv(
                self.file_path,
                index=False,
                float_format=self.FLOAT_FORMAT,
                lineterminator="\n",
            )
        except OSError as exc:
            raise StorageError(f"cannot write ({exc.strerror})", self.file_path) from exc
