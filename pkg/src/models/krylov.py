"""
Bi-Lanczos output models
"""

import numpy as np
from typing import List

from pydantic import BaseModel, Field

from .base import ArrayModel, TerminationReason


class KrylovData(ArrayModel):
    """Coefficients and biorthonormal left/right Krylov bases

    Index 0 of ``b`` and ``c`` holds the b₀ = c₀ = 0 convention. ``c`` is kept
    complex so the projected tridiagonal matrix is reproduced exactly.
    """
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    right_basis: np.ndarray  # shape (M, D²)
    left_basis: np.ndarray  # shape (M, D²)
    hilbert_dim: int = Field(ge=1)
    termination_reason: TerminationReason

    @property
    def dim(self) -> int:
        """M_K, the numerically resolved Krylov dimension"""
        return int(self.a.shape[0])


class KrylovDiagnostics(BaseModel):
    """Invariant residuals of one bi-Lanczos run

    ``bc_signs`` holds sign(bₙ·Re cₙ) for n ≥ 1. The product bₙcₙ = (Bₙ|Aₙ) is
    gauge invariant and can be negative in the open model.
    """
    biorthonormality_error: float
    recurrence_residual: float
    projection_error: float
    max_real_a: float
    max_imag_c: float
    bc_signs: List[int] = Field(default_factory=list)

    @property
    def negative_bc_count(self) -> int:
        return sum(1 for s in self.bc_signs if s < 0)


class GrowthFit(BaseModel):
    """Least-squares fit bₙ ≈ αn + γ of the leading Lanczos coefficients"""
    alpha: float
    gamma: float
    n_points: int
