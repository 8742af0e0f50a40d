"""
Services package: numerical kernels and orchestration services

Default instances live in their modules, e.g.
``src.services.experiment_service.experiment_service``.
"""

from .experiment_service import ExperimentService
from .lemma_service import LemmaService
from .verification_service import VerificationService

__all__ = [
    "ExperimentService",
    "LemmaService",
    "VerificationService",
]
