"""
Superoperator model for the adjoint Lindblad generator
"""

import numpy as np
from pydantic import Field

from .base import ArrayModel


class Superoperator(ArrayModel):
    """ℒ = ℒ_U + ℒ_D on row-stacked operators; dynamics are dX/dt = iℒX"""
    matrix: np.ndarray
    unitary_part: np.ndarray
    dissipative_part: np.ndarray
    mu: float = Field(ge=0)
    fermionic: bool = True
    dim: int = Field(ge=1, description="Hilbert-space dimension D")
