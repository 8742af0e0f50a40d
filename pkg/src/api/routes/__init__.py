"""
Routes package
"""

from .experiments import router as experiments_router
from .health import router as health_router
from .verification import router as verification_router

__all__ = ["experiments_router", "health_router", "verification_router"]
