"""
Domain exceptions for the Krylov spread simulator
"""

from typing import Optional


class KrylovError(Exception):
    """Base class for every error raised by the simulator"""


class InvalidArgumentError(KrylovError, ValueError):
    """An argument violates an operation's precondition"""


class ResourceLimitError(KrylovError):
    """The requested size exceeds the configured memory guard"""


class NumericalBreakdownError(KrylovError):
    """The bi-Lanczos recursion lost biorthogonality or hit a serious breakdown"""

    def __init__(self, message: str, step: int):
        super().__init__(f"{message} (step {step})")
        self.step = step


class DegenerateStateError(KrylovError):
    """A population or complexity was requested for an operator with no weight"""


class BasisIncompleteError(KrylovError):
    """Basis overlaps do not account for the full operator norm"""


class AbortedRunError(KrylovError):
    """Too many realizations failed, or none succeeded, for an experiment"""


class ConfigError(KrylovError, ValueError):
    """An experiment configuration file is malformed"""

    def __init__(self, message: str, path: Optional[str] = None, key: Optional[str] = None):
        location = ""
        if path:
            location += f"{path}: "
        if key:
            location += f"key '{key}': "
        super().__init__(f"{location}{message}")
        self.path = path
        self.key = key


class StorageError(KrylovError):
    """Reading or writing result files failed"""

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path
