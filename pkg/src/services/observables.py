"""
Time evolution, populations and complexity measures

Two evolution routes are provided: the full D²×D² propagator and the
Krylov-chain propagator built from the projected tridiagonal matrix.
"""

from typing import List, Optional, Sequence

import numpy as np
from scipy.linalg import eig, eigh, expm
from scipy.special import entr

from src.core.config import Settings, settings
from src.core.exceptions import (
    BasisIncompleteError,
    DegenerateStateError,
    InvalidArgumentError,
)
from src.core.logging import get_logger
from src.models.base import PopulationConvention, PropagationMethod
from src.models.krylov import KrylovData
from src.models.lindbladian import Superoperator
from src.models.observables import (
    ComplexitySeries,
    EvolvedOperator,
    KrylovAmplitudes,
    PopulationDistribution,
    SpreadMeasure,
)
from src.models.operators import OperatorBasis, OperatorVector, StringBasis
from src.services.bilanczos import tridiagonal_matrix
from src.services.operator_algebra import operator_norm_sq

log = get_logger("observables")


def propagate(
    generator: np.ndarray,
    x0: np.ndarray,
    times: Sequence[float],
    method: PropagationMethod = PropagationMethod.SPECTRAL,
    config: Settings = settings,
) -> np.ndarray:
    """Rows e^{i·generator·t}·x0 for every t

    The spectral route decomposes once and reuses the decomposition for the
    whole grid; an ill-conditioned eigenbasis falls back to ``expm`` per time.
    """
    times = np.asarray(times, dtype=float)
    x0 = np.asarray(x0, dtype=complex)
    rows = None

    if method == PropagationMethod.SPECTRAL:
        if np.allclose(generator, generator.conj().T, atol=1e-13, rtol=0.0):
            values, vectors = eigh(generator)
            coefficients = vectors.conj().T @ x0
            rows = (np.exp(1j * np.outer(times, values)) * coefficients) @ vectors.T
        else:
            values, vectors = eig(generator)
            condition = np.linalg.cond(vectors)
            if np.isfinite(condition) and condition <= config.condition_limit:
                coefficients = np.linalg.solve(vectors, x0)
                rows = (np.exp(1j * np.outer(times, values)) * coefficients) @ vectors.T
            else:
                log.warning(
                    "Eigenvector condition {:.2e} exceeds {:.0e}; falling back to expm per time",
                    condition,
                    config.condition_limit,
                )

    if rows is None:
        rows = np.array([expm(1j * t * generator) @ x0 for t in times])
    # t = 0 is the seed itself
    rows[times == 0] = x0
    return rows


def evolve_full(
    superoperator: Superoperator,
    x0: OperatorVector,
    times: Sequence[float],
    method: PropagationMethod = PropagationMethod.SPECTRAL,
    config: Settings = settings,
) -> List[EvolvedOperator]:
    """X_t = e^{iℒt}X₀ on the grid"""
    if x0.dim != superoperator.dim:
        raise InvalidArgumentError("Operator and superoperator dimensions differ")
    if abs(operator_norm_sq(x0) - 1.0) > 1e-10:
        raise InvalidArgumentError("Initial operator must be normalized")

    rows = propagate(superoperator.matrix, x0.data, times, method, config)
    evolved = []
    for t, row in zip(times, rows):
        vector = OperatorVector(data=row, dim=x0.dim)
        evolved.append(
            EvolvedOperator(time=float(t), vector=vector, norm_sq=operator_norm_sq(vector))
        )
    return evolved


def krylov_gram(krylov: KrylovData) -> np.ndarray:
    """G[n, m] = (Oₙ|Oₘ) for the right basis"""
    right = krylov.right_basis
    return right.conj() @ right.T / krylov.hilbert_dim


def evolve_krylov(
    krylov: KrylovData,
    times: Sequence[float],
    config: Settings = settings,
) -> KrylovAmplitudes:
    """pₙ(t) from the chain propagator; qₙ(t) = conj(Σₘ Gₙₘ pₘ(t))"""
    seed = np.zeros(krylov.dim, dtype=complex)
    seed[0] = 1.0
    p = propagate(tridiagonal_matrix(krylov), seed, times, PropagationMethod.SPECTRAL, config)
    q = (p @ krylov_gram(krylov).T).conj()
    return KrylovAmplitudes(
        times=np.asarray(times, dtype=float),
        p=p,
        q=q,
        method=PropagationMethod.SPECTRAL,
    )


def project_krylov(krylov: KrylovData, evolved: Sequence[EvolvedOperator]) -> KrylovAmplitudes:
    """pₙ = (Õₙ|X_t) and qₙ = (X_t|Oₙ) from fully evolved operators"""
    stack = np.array([x.vector.data for x in evolved])
    dim = krylov.hilbert_dim
    p = stack @ krylov.left_basis.conj().T / dim
    q = (stack @ krylov.right_basis.conj().T / dim).conj()
    return KrylovAmplitudes(
        times=np.array([x.time for x in evolved]),
        p=p,
        q=q,
        method=PropagationMethod.EXPM,
    )


def krylov_complexity(p: np.ndarray, q: np.ndarray, config: Settings = settings) -> float:
    weights = np.asarray(q) * np.asarray(p)
    total = weights.sum()
    if abs(total) < 1e-300:
        raise DegenerateStateError("Σ qₙpₙ vanishes; Krylov complexity is undefined")
    ratio = (np.arange(weights.shape[0]) * weights).sum() / total
    if abs(ratio.imag) > config.imaginary_residue_tol * max(1.0, abs(ratio)):
        log.warning("Krylov complexity has imaginary residue {:.3e}", ratio.imag)
    return float(ratio.real)


def weight_coherence(p: np.ndarray, q: np.ndarray) -> float:
    """|Σ qₙpₙ| / Σ |qₙpₙ|; small values mean K(t) is a ratio of cancelling sums"""
    weights = np.asarray(q) * np.asarray(p)
    total = np.abs(weights).sum()
    if total == 0:
        return 0.0
    return float(abs(weights.sum()) / total)


def _normalize(weights: np.ndarray, label: str) -> PopulationDistribution:
    total = weights.sum()
    if total <= 0:
        raise DegenerateStateError(f"Zero total weight in basis '{label}'")
    return PopulationDistribution(probabilities=weights / total, basis_label=label)


def krylov_population(
    p: np.ndarray,
    q: np.ndarray,
    convention: PopulationConvention = PopulationConvention.MODULUS,
) -> PopulationDistribution:
    weights = np.asarray(q) * np.asarray(p)
    if PopulationConvention(convention) == PopulationConvention.MODULUS:
        return _normalize(np.abs(weights), "krylov")

    real = weights.real
    negative = real[real < -1e-12]
    if negative.size:
        log.debug("Clamping {} negative Krylov weights (min {:.3e})", negative.size, negative.min())
    return _normalize(np.clip(real, 0.0, None), "krylov")


def population_distribution(
    evolved: EvolvedOperator,
    basis: OperatorBasis,
    check_completeness: bool = True,
    config: Settings = settings,
) -> PopulationDistribution:
    """P(n) = |(Gₙ|X_t)|² / Σₘ|(Gₘ|X_t)|²"""
    if evolved.vector.dim != basis.dim:
        raise InvalidArgumentError("Operator and basis dimensions differ")
    weights = np.abs(basis.overlaps(evolved.vector)) ** 2
    captured = weights.sum()
    if check_completeness and abs(captured - evolved.norm_sq) > config.completeness_tol * max(
        evolved.norm_sq, 1.0
    ):
        raise BasisIncompleteError(
            f"Basis '{basis.label}' captures {captured:.12g} of ‖X_t‖² = {evolved.norm_sq:.12g}"
        )
    return _normalize(weights, basis.label)


def spread_complexity(population: PopulationDistribution) -> SpreadMeasure:
    """F = −Σ P ln P and C = e^F"""
    entropy = float(entr(population.probabilities).sum())
    return SpreadMeasure(entropy=entropy, complexity=float(np.exp(entropy)))


def size_distribution(population: PopulationDistribution, basis: StringBasis) -> np.ndarray:
    """Total weight per string length 0…N"""
    return np.bincount(
        basis.lengths(),
        weights=population.probabilities,
        minlength=basis.n_fermions + 1,
    )


def mean_operator_size(population: PopulationDistribution, basis: StringBasis) -> float:
    return float(population.probabilities @ basis.lengths())


def complexity_series(
    superoperator: Superoperator,
    x0: OperatorVector,
    krylov: KrylovData,
    times: Sequence[float],
    string_basis: Optional[StringBasis] = None,
    convention: PopulationConvention = PopulationConvention.MODULUS,
    method: PropagationMethod = PropagationMethod.SPECTRAL,
    config: Settings = settings,
) -> ComplexitySeries:
    """Every observable of one realization on the grid

    String-basis columns are NaN when no string basis is given.
    """
    times = np.asarray(times, dtype=float)
    evolved = evolve_full(superoperator, x0, times, method, config)
    amplitudes = evolve_krylov(krylov, times, config)

    n_times = times.shape[0]
    k_values = np.empty(n_times)
    f_krylov = np.empty(n_times)
    coherence = np.empty(n_times)
    f_string = np.full(n_times, np.nan)
    sizes = np.full(n_times, np.nan)

    for i in range(n_times):
        p, q = amplitudes.p[i], amplitudes.q[i]
        k_values[i] = krylov_complexity(p, q, config)
        coherence[i] = weight_coherence(p, q)
        f_krylov[i] = spread_complexity(krylov_population(p, q, convention)).entropy
        if string_basis is not None:
            population = population_distribution(evolved[i], string_basis, config=config)
            f_string[i] = spread_complexity(population).entropy
            sizes[i] = mean_operator_size(population, string_basis)

    flagged = bool(coherence.min() < config.coherence_floor)
    if flagged:
        worst = int(np.argmin(coherence))
        log.warning(
            "Krylov weights cancel at Jt={:.3g}: |Σqp| / Σ|qp| = {:.2e} (floor {:.0e})",
            times[worst], coherence[worst], config.coherence_floor,
        )

    return ComplexitySeries(
        times=times,
        K=k_values,
        C_krylov=np.exp(f_krylov),
        C_string=np.exp(f_string),
        F_krylov=f_krylov,
        F_string=f_string,
        norm=np.array([x.norm_sq for x in evolved]),
        mean_size=sizes,
        dim=krylov.dim,
        min_coherence=float(coherence.min()),
        flagged=flagged,
    )
