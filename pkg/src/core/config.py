"""
Process-wide settings for the Krylov spread simulator
"""

import os
from typing import Any, Dict

from pydantic import BaseModel, Field

ENV_PREFIX = "KRYLOV_"


class Settings(BaseModel):
    """Numerical guards and runtime defaults shared by every service"""

    max_fermions: int = Field(default=14, ge=2, description="Memory guard on N")
    hermiticity_tol: float = Field(default=1e-8, gt=0)
    lanczos_tol: float = Field(default=1e-8, gt=0)
    alignment_tol: float = Field(
        default=1e-2, gt=0, lt=1, description="Chain ends when |(Oₙ|Oₙ₊₁)| > 1 - alignment_tol"
    )
    biorthogonality_limit: float = Field(default=1e-6, gt=0)
    max_pair_condition: float = Field(default=1e6, gt=1)
    condition_limit: float = Field(default=1e12, gt=1)
    completeness_tol: float = Field(default=1e-8, gt=0)
    imaginary_residue_tol: float = Field(default=1e-6, gt=0)
    coherence_floor: float = Field(
        default=1e-2, gt=0, lt=1, description="Flag series with |Σqp| / Σ|qp| below this"
    )
    failure_fraction_limit: float = Field(default=0.01, ge=0, le=1)
    log_level: str = "INFO"
    default_workers: int = Field(default=1, ge=1)

    @classmethod
    def from_env(cls) -> "Settings":
        """Build settings, overriding defaults with KRYLOV_<FIELD> variables"""
        overrides: Dict[str, Any] = {}
        for name in cls.model_fields:
            value = os.environ.get(f"{ENV_PREFIX}{name.upper()}")
            if value is not None:
                overrides[name] = value
        return cls(**overrides)


# Default settings instance
settings = Settings.from_env()
