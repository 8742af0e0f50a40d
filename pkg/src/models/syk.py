"""
Disorder models for the SYK Hamiltonian
"""

from typing import Dict, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class DisorderSpec(BaseModel):
    """Coupling distribution and seeding for a family of SYK realizations"""
    model_config = ConfigDict(frozen=True)

    J: float = Field(default=1.0, gt=0, description="Coupling scale; times are Jt")
    q: int = Field(default=4, ge=2)
    N: int = Field(default=8, ge=2)
    seed: int = Field(default=0, ge=0, lt=2**64)
    n_realizations: int = Field(default=1, ge=1)

    @field_validator("q", "N")
    @classmethod
    def even(cls, v: int) -> int:
        if v % 2:
            raise ValueError(f"must be even, got {v}")
        return v

    @model_validator(mode="after")
    def order_fits(self) -> "DisorderSpec":
        if self.q > self.N:
            raise ValueError(f"interaction order q={self.q} exceeds N={self.N}")
        return self


class CouplingTensor(BaseModel):
    """Real couplings J_{i₁…i_q}, one per strictly ascending q-tuple (1-based)"""
    model_config = ConfigDict(frozen=True)

    q: int
    N: int
    entries: Dict[Tuple[int, ...], float]
