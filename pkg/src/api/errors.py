"""
Mapping from domain exceptions to HTTP errors
"""

from fastapi import HTTPException, status

from src.core.exceptions import (
    AbortedRunError,
    ConfigError,
    InvalidArgumentError,
    KrylovError,
    ResourceLimitError,
)


def to_http(exc: KrylovError) -> HTTPException:
    if isinstance(exc, (InvalidArgumentError, ConfigError)):
        code = status.HTTP_400_BAD_REQUEST
    elif isinstance(exc, ResourceLimitError):
        code = status.HTTP_413_REQUEST_ENTITY_TOO_LARGE
    elif isinstance(exc, AbortedRunError):
        code = status.HTTP_422_UNPROCESSABLE_ENTITY
    else:
        code = status.HTTP_500_INTERNAL_SERVER_ERROR
    return HTTPException(status_code=code, detail=str(exc))


def not_found(what: str, outputs: str) -> HTTPException:
    return HTTPException(
        status_code=status.HTTP_404_NOT_FOUND,
        detail=f"No {what} found under '{outputs}'",
    )
