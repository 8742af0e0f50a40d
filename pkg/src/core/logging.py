"""
Logging setup for the Krylov spread simulator
"""

import sys
from typing import TYPE_CHECKING, Optional

from loguru import logger

from src.core.config import settings

if TYPE_CHECKING:
    from loguru import Logger

LOG_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | "
    "<cyan>{extra[component]}</cyan> - <level>{message}</level>"
)


def configure_logging(level: Optional[str] = None) -> None:
    """Replace loguru's default sink with a single formatted stderr sink"""
    logger.remove()
    logger.configure(extra={"component": "krylov"})
    logger.add(sys.stderr, level=(level or settings.log_level).upper(), format=LOG_FORMAT)


def get_logger(component: str) -> "Logger":
    """Logger bound to a component name"""
    return logger.bind(component=component)
