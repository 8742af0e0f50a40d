"""
Base models and enums for the Krylov spread simulator
"""

from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator


class Parity(str, Enum):
    ODD = "odd"
    EVEN = "even"
    ALL = "all"


class TerminationReason(str, Enum):
    BREAKDOWN = "breakdown"
    ALIGNMENT = "alignment"
    ILL_CONDITIONED = "ill_conditioned"
    MAX_DIM = "max_dim"


class PopulationConvention(str, Enum):
    MODULUS = "modulus"
    REAL_PART = "real_part"


class KrylovWeighting(str, Enum):
    """How the Krylov basis is weighted when compared against trial bases"""
    ORTHONORMALIZED = "orthonormalized"
    MODULUS = "modulus"


class BasisName(str, Enum):
    KRYLOV = "krylov"
    STRING = "string"


class PropagationMethod(str, Enum):
    SPECTRAL = "spectral"
    EXPM = "expm"


class ArrayModel(BaseModel):
    """Immutable model holding numpy arrays; arrays are copied and made read-only"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @field_validator("*", mode="after")
    @classmethod
    def freeze_arrays(cls, v: Any) -> Any:
        if isinstance(v, np.ndarray):
            v = np.array(v, copy=True)
            v.setflags(write=False)
        return v


class BaseResponse(BaseModel):
    """Base response model with common fields"""
    message: str
