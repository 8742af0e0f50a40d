"""
Disordered SYK couplings and Hamiltonian
"""

from itertools import combinations
from math import factorial

import numpy as np

from src.core.exceptions import InvalidArgumentError
from src.models.operators import MajoranaSet
from src.models.syk import CouplingTensor, DisorderSpec


def coupling_variance(J: float, q: int, N: int) -> float:
    """σ² = J²(q−1)!/N^{q−1}"""
    return J**2 * factorial(q - 1) / N ** (q - 1)


def realization_rng(seed: int, realization_index: int) -> np.random.Generator:
    """Independent stream for one realization: SeedSequence(seed, spawn_key=(index,))"""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(realization_index,)))


def sample_couplings(spec: DisorderSpec, realization_index: int) -> CouplingTensor:
    """Gaussian couplings J_{i₁…i_q} for one realization

    Draws come from a stream keyed by (seed, realization_index), so a
    realization is identical across μ values and worker counts.
    """
    if not 0 <= realization_index < spec.n_realizations:
        raise InvalidArgumentError(
            f"Realization index {realization_index} outside [0, {spec.n_realizations})"
        )

    rng = realization_rng(spec.seed, realization_index)
    sigma = np.sqrt(coupling_variance(spec.J, spec.q, spec.N))
    tuples = list(combinations(range(1, spec.N + 1), spec.q))
    values = rng.normal(loc=0.0, scale=sigma, size=len(tuples))

    return CouplingTensor(
        q=spec.q,
        N=spec.N,
        entries={t: float(v) for t, v in zip(tuples, values)},
    )


def build_hamiltonian(couplings: CouplingTensor, majoranas: MajoranaSet) -> np.ndarray:
    """H = i^{q/2} Σ J_{i₁…i_q} ψ_{i₁}…ψ_{i_q}"""
    if couplings.N != majoranas.n_fermions:
        raise InvalidArgumentError(
            f"Couplings for N={couplings.N} do not match {majoranas.n_fermions} Majoranas"
        )

    dim = majoranas.hilbert_dim
    hamiltonian = np.zeros((dim, dim), dtype=complex)
    for indices, value in couplings.entries.items():
        if value == 0.0:
            continue
        term = majoranas.psi(indices[0])
        for i in indices[1:]:
            term = term @ majoranas.psi(i)
        hamiltonian += value * term

    return (1j ** (couplings.q // 2)) * hamiltonian
