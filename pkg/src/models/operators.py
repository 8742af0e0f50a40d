"""
Operator-space models: Majorana sets, vectorized operators, strings and bases
"""

from typing import List, Tuple

import numpy as np
from pydantic import Field, computed_field, field_validator

from .base import ArrayModel, Parity


class MajoranaSet(ArrayModel):
    """N Majorana matrices ψ₁…ψ_N on a 2^{N/2}-dimensional Hilbert space"""
    n_fermions: int = Field(ge=2)
    hilbert_dim: int = Field(ge=2)
    matrices: np.ndarray  # shape (N, D, D), index 0 holds ψ₁

    def psi(self, index: int) -> np.ndarray:
        """ψ_index with 1-based indexing"""
        return self.matrices[index - 1]


class OperatorVector(ArrayModel):
    """Row-stacked D×D operator as a length-D² complex vector"""
    data: np.ndarray
    dim: int = Field(ge=1)

    @field_validator("data")
    @classmethod
    def ensure_complex_vector(cls, v: np.ndarray) -> np.ndarray:
        return np.asarray(v, dtype=complex).reshape(-1)


class MajoranaString(ArrayModel):
    """Ascending product ψ_{i₁}…ψ_{i_s}, with the factor making it unit-norm"""
    indices: Tuple[int, ...]

    @field_validator("indices")
    @classmethod
    def strictly_ascending(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError(f"String indices must be strictly ascending, got {v}")
        if any(i < 1 for i in v):
            raise ValueError("String indices start at 1")
        return tuple(v)

    @computed_field  # type: ignore[misc]
    @property
    def length(self) -> int:
        return len(self.indices)

    @computed_field  # type: ignore[misc]
    @property
    def normalization(self) -> float:
        return float(2.0 ** (self.length / 2))

    def label(self) -> str:
        if not self.indices:
            return "1"
        return "*".join(f"psi{i}" for i in self.indices)


class OperatorBasis(ArrayModel):
    """Orthonormal set of vectorized operators under (A|B) = Tr[A†B]/D"""
    label: str
    vectors: np.ndarray  # shape (n_elements, D²)
    dim: int = Field(ge=1)

    @computed_field  # type: ignore[misc]
    @property
    def size(self) -> int:
        return int(self.vectors.shape[0])

    def overlaps(self, x: OperatorVector) -> np.ndarray:
        """(G_n|X) for every basis element"""
        return (self.vectors.conj() @ x.data) / self.dim


class StringBasis(OperatorBasis):
    """Normalized Majorana strings of one parity, length-then-lexicographic order"""
    parity: Parity
    n_fermions: int
    strings: List[MajoranaString]

    def lengths(self) -> np.ndarray:
        return np.array([s.length for s in self.strings], dtype=int)
