"""
Adjoint Lindblad superoperator with Majorana jump operators L_n = √μ·ψ_n
"""

from typing import List, Sequence

import numpy as np

from src.core.config import Settings, settings
from src.core.exceptions import InvalidArgumentError
from src.models.lindbladian import Superoperator
from src.models.observables import EvolvedOperator
from src.models.operators import MajoranaSet, OperatorVector, StringBasis


def build_unitary_part(hamiltonian: np.ndarray, config: Settings = settings) -> np.ndarray:
    """ℒ_U = [H, ·] = H ⊗ 𝟙 − 𝟙 ⊗ Hᵀ"""
    deviation = np.max(np.abs(hamiltonian - hamiltonian.conj().T)) if hamiltonian.size else 0.0
    if deviation > config.hermiticity_tol:
        raise InvalidArgumentError(f"Hamiltonian is not Hermitian (max deviation {deviation:.2e})")
    identity = np.eye(hamiltonian.shape[0], dtype=complex)
    return np.kron(hamiltonian, identity) - np.kron(identity, hamiltonian.T)


def build_dissipative_part(
    majoranas: MajoranaSet, mu: float, fermionic: bool = True
) -> np.ndarray:
    """Fermionic: ℒ_D X = iμ(Σψ X ψ + (N/2)X); "+" variant: −iμ(Σψ X ψ − (N/2)X)"""
    if mu < 0:
        raise InvalidArgumentError(f"Dissipation strength must be non-negative, got {mu}")
    dim = majoranas.hilbert_dim
    sandwich = sum(np.kron(psi, psi.T) for psi in majoranas.matrices)
    half_n = majoranas.n_fermions / 2 * np.eye(dim * dim, dtype=complex)
    if fermionic:
        return 1j * mu * (sandwich + half_n)
    return -1j * mu * (sandwich - half_n)


def build_full(
    hamiltonian: np.ndarray,
    majoranas: MajoranaSet,
    mu: float,
    fermionic: bool = True,
    config: Settings = settings,
) -> Superoperator:
    """ℒ = H⊗I − I⊗Hᵀ plus the Majorana dissipator at strength μ

    fermionic=False selects the "+" variant of build_dissipative_part.
    """
    if hamiltonian.shape != (majoranas.hilbert_dim, majoranas.hilbert_dim):
        raise InvalidArgumentError("Hamiltonian and Majorana dimensions differ")
    unitary = build_unitary_part(hamiltonian, config)
    dissipative = build_dissipative_part(majoranas, mu, fermionic)
    return Superoperator(
        matrix=unitary + dissipative,
        unitary_part=unitary,
        dissipative_part=dissipative,
        mu=mu,
        fermionic=fermionic,
        dim=majoranas.hilbert_dim,
    )


def adjoint(superoperator: Superoperator) -> np.ndarray:
    """ℒ† under (A|B) = Tr[A†B]/D, i.e. the conjugate transpose"""
    return superoperator.matrix.conj().T


def apply(superoperator: Superoperator, x: OperatorVector) -> OperatorVector:
    return OperatorVector(data=superoperator.matrix @ x.data, dim=x.dim)


def string_eigenvalue(length: int, n_fermions: int, mu: float, fermionic: bool = True) -> complex:
    """Eigenvalue of ℒ_D on a normalized string of the given length"""
    odd = length % 2 == 1
    if fermionic == odd:
        return 1j * mu * length
    return 1j * mu * (n_fermions - length)


def strong_decoherence_evolution(
    coefficients: Sequence[complex],
    basis: StringBasis,
    mu: float,
    times: Sequence[float],
    fermionic: bool = True,
) -> List[EvolvedOperator]:
    """X_t = Σ p_i e^{iλ_i t} S_i; exact for H = 0, the Zeno-limit form otherwise"""
    coefficients = np.asarray(coefficients, dtype=complex)
    if coefficients.shape != (basis.size,):
        raise InvalidArgumentError("One coefficient per basis string is required")
    rates = np.array(
        [1j * string_eigenvalue(s, basis.n_fermions, mu, fermionic) for s in basis.lengths()]
    )
    evolved = []
    for t in times:
        amplitudes = coefficients * np.exp(rates * t)
        vector = OperatorVector(data=amplitudes @ basis.vectors, dim=basis.dim)
        evolved.append(
            EvolvedOperator(
                time=float(t),
                vector=vector,
                norm_sq=float(np.sum(np.abs(amplitudes) ** 2)),
            )
        )
    return evolved
