"""
Majorana operators, string bases and the infinite-temperature operator inner product

Operators are vectorized by row stacking, so vec(A·X·B) = (A ⊗ Bᵀ)·vec(X).
"""

import re
from functools import reduce
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.core.config import Settings, settings
from src.core.exceptions import InvalidArgumentError, ResourceLimitError
from src.models.base import Parity
from src.models.operators import (
    MajoranaSet,
    MajoranaString,
    OperatorBasis,
    OperatorVector,
    StringBasis,
)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


def build_majoranas(n_fermions: int, config: Settings = settings) -> MajoranaSet:
    """Jordan–Wigner Majoranas normalized so that {ψᵢ, ψⱼ} = δᵢⱼ·𝟙"""
    if n_fermions < 2 or n_fermions % 2:
        raise InvalidArgumentError(f"N must be an even integer >= 2, got {n_fermions}")
    if n_fermions > config.max_fermions:
        raise ResourceLimitError(
            f"N={n_fermions} exceeds the memory guard max_fermions={config.max_fermions}"
        )

    n_sites = n_fermions // 2
    matrices = []
    for k in range(n_sites):
        for pauli in (PAULI_X, PAULI_Y):
            factors = [PAULI_Z] * k + [pauli] + [IDENTITY_2] * (n_sites - k - 1)
            matrices.append(reduce(np.kron, factors) / np.sqrt(2))

    return MajoranaSet(
        n_fermions=n_fermions,
        hilbert_dim=2**n_sites,
        matrices=np.stack(matrices),
    )


def rotate_representation(majoranas: MajoranaSet, unitary: np.ndarray) -> MajoranaSet:
    """Conjugate every ψ by a fixed unitary; the algebra is unchanged"""
    if unitary.shape != (majoranas.hilbert_dim, majoranas.hilbert_dim):
        raise InvalidArgumentError("Unitary dimension does not match the Majorana set")
    if not np.allclose(unitary.conj().T @ unitary, np.eye(majoranas.hilbert_dim), atol=1e-12):
        raise InvalidArgumentError("Representation change must be unitary")
    rotated = np.einsum("ij,njk,lk->nil", unitary, majoranas.matrices, unitary.conj())
    return MajoranaSet(
        n_fermions=majoranas.n_fermions,
        hilbert_dim=majoranas.hilbert_dim,
        matrices=rotated,
    )


def vectorize(matrix: np.ndarray) -> OperatorVector:
    """Row-stacked vector of a square operator; raises InvalidArgumentError otherwise"""
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidArgumentError(f"Expected a square matrix, got shape {matrix.shape}")
    return OperatorVector(data=np.asarray(matrix, dtype=complex).reshape(-1), dim=matrix.shape[0])


def devectorize(vector: OperatorVector) -> np.ndarray:
    """Inverse of vectorize"""
    if vector.data.shape[0] != vector.dim**2:
        raise InvalidArgumentError(
            f"Vector of length {vector.data.shape[0]} cannot hold a {vector.dim}x{vector.dim} operator"
        )
    return vector.data.reshape(vector.dim, vector.dim).copy()


def inner_product(a: OperatorVector, b: OperatorVector) -> complex:
    """(A|B) = Tr[A†B]/D"""
    if a.dim != b.dim or a.data.shape != b.data.shape:
        raise InvalidArgumentError(f"Dimension mismatch: {a.dim} vs {b.dim}")
    return complex(np.vdot(a.data, b.data) / a.dim)


def operator_norm_sq(x: OperatorVector) -> float:
    return float(np.real(inner_product(x, x)))


# Symbolic string algebra

def multiply_strings(
    left: Sequence[int], right: Sequence[int]
) -> Tuple[complex, Tuple[int, ...]]:
    """Reduce ψ_left·ψ_right to coefficient × ascending string, without matrices

    Adjacent distinct factors anticommute (sign flip); equal neighbours contract
    to 1/2. Both inputs are unnormalized index products.
    """
    factors = list(left) + list(right)
    coefficient: complex = 1.0
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(factors) - 1:
            if factors[i] > factors[i + 1]:
                factors[i], factors[i + 1] = factors[i + 1], factors[i]
                coefficient = -coefficient
                changed = True
            elif factors[i] == factors[i + 1]:
                del factors[i:i + 2]
                coefficient *= 0.5
                changed = True
                continue
            i += 1
    return coefficient, tuple(factors)


def commutator_strings(
    left: Sequence[int], right: Sequence[int]
) -> Tuple[complex, Tuple[int, ...]]:
    """[ψ_left, ψ_right] as coefficient × ascending string (coefficient may be 0)"""
    forward, indices = multiply_strings(left, right)
    backward, _ = multiply_strings(right, left)
    return forward - backward, indices


def string_dagger_sign(length: int) -> int:
    """(ψ_{i₁}…ψ_{i_s})† = (−1)^{s(s−1)/2} ψ_{i₁}…ψ_{i_s}"""
    return -1 if (length * (length - 1) // 2) % 2 else 1


def hermitian_phase(length: int) -> complex:
    """Phase making i^k·Ŝ Hermitian for a string of this length"""
    return complex(1j ** ((length * (length - 1) // 2) % 4))


def string_matrix(string: MajoranaString, majoranas: MajoranaSet) -> np.ndarray:
    """Normalized string matrix 2^{s/2}·ψ_{i₁}…ψ_{i_s}"""
    dim = majoranas.hilbert_dim
    if string.indices and string.indices[-1] > majoranas.n_fermions:
        raise InvalidArgumentError(
            f"String {string.label()} uses a fermion beyond N={majoranas.n_fermions}"
        )
    product = reduce(
        np.matmul,
        (majoranas.psi(i) for i in string.indices),
        np.eye(dim, dtype=complex),
    )
    return string.normalization * product


def enumerate_strings(n_fermions: int, parity: Parity) -> List[MajoranaString]:
    """All strings of the requested parity, by length then lexicographically"""
    lengths = range(n_fermions + 1)
    if parity == Parity.ODD:
        lengths = range(1, n_fermions + 1, 2)
    elif parity == Parity.EVEN:
        lengths = range(0, n_fermions + 1, 2)
    return [
        MajoranaString(indices=combo)
        for s in lengths
        for combo in combinations(range(1, n_fermions + 1), s)
    ]


def build_string_basis(majoranas: MajoranaSet, parity: Parity = Parity.ODD) -> StringBasis:
    strings = enumerate_strings(majoranas.n_fermions, Parity(parity))
    vectors = np.stack([string_matrix(s, majoranas).reshape(-1) for s in strings])
    return StringBasis(
        label=f"string-{Parity(parity).value}",
        vectors=vectors,
        dim=majoranas.hilbert_dim,
        parity=Parity(parity),
        n_fermions=majoranas.n_fermions,
        strings=strings,
    )


def gram_matrix(basis: OperatorBasis) -> np.ndarray:
    """[(G_i|G_j)]"""
    return (basis.vectors.conj() @ basis.vectors.T) / basis.dim


def orthonormality_error(basis: OperatorBasis) -> float:
    return float(np.max(np.abs(gram_matrix(basis) - np.eye(basis.size))))


# Initial-operator specs

_FACTOR = re.compile(r"^(?:psi(?P<psi>\d+)|sqrt(?P<sqrt>\d+(?:\.\d+)?)|(?P<num>[-+]?\d+(?:\.\d*)?(?:[eE][-+]?\d+)?))$")


def parse_operator_spec(spec: str) -> Tuple[float, Tuple[int, ...]]:
    """Split a spec such as ``sqrt2*psi1`` into (prefactor, ascending indices)"""
    prefactor = 1.0
    indices: List[int] = []
    for token in (t.strip() for t in spec.split("*")):
        match = _FACTOR.match(token)
        if match is None:
            raise InvalidArgumentError(f"Cannot parse operator factor '{token}' in '{spec}'")
        if match.group("psi"):
            indices.append(int(match.group("psi")))
        elif match.group("sqrt"):
            prefactor *= float(np.sqrt(float(match.group("sqrt"))))
        else:
            prefactor *= float(match.group("num"))
    if any(b <= a for a, b in zip(indices, indices[1:])):
        raise InvalidArgumentError(f"Operator '{spec}' must list distinct ascending psi indices")
    return prefactor, tuple(indices)


def parse_operator(spec: str, majoranas: MajoranaSet) -> OperatorVector:
    """Vectorized operator for a spec such as ``sqrt2*psi1``; malformed specs raise InvalidArgumentError"""
    prefactor, indices = parse_operator_spec(spec)
    string = MajoranaString(indices=indices)
    matrix = prefactor * string_matrix(string, majoranas) / string.normalization
    return vectorize(matrix)


def operator_parity(spec: str) -> Optional[Parity]:
    """Parity of a single-string operator spec; None for the identity"""
    _, indices = parse_operator_spec(spec)
    if not indices:
        return None
    return Parity.ODD if len(indices) % 2 else Parity.EVEN
