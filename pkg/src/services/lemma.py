"""
Small-time Taylor order and Krylov minimality checks

A basis sharing its first m elements with the Krylov basis sees weight on
elements n ≥ m only at order t^{2m}, and the Krylov basis minimizes spread
entropy at early times against every such basis.
"""

from typing import List, Optional, Sequence

import numpy as np
from scipy.linalg import null_space, qr
from scipy.stats import unitary_group

from src.core.config import Settings, settings
from src.core.exceptions import InvalidArgumentError
from src.core.logging import get_logger
from src.models.base import KrylovWeighting, PropagationMethod
from src.models.krylov import KrylovData
from src.models.lindbladian import Superoperator
from src.models.observables import LemmaReport, TrialBasisResult
from src.models.operators import OperatorBasis, OperatorVector
from src.services.observables import (
    evolve_full,
    krylov_population,
    population_distribution,
    project_krylov,
    spread_complexity,
)
from src.services.operator_algebra import orthonormality_error

log = get_logger("lemma")

MINIMALITY_SLACK = 1e-9
ELEMENT_FLOOR = 1e-20


def trial_rng(seed: int, realization_index: int, m: int) -> np.random.Generator:
    """Stream for trial bases, disjoint from the coupling streams"""
    return np.random.default_rng(
        np.random.SeedSequence(seed, spawn_key=(realization_index, 1, m))
    )


def _orthonormal_columns(vectors: np.ndarray) -> np.ndarray:
    """Gram–Schmidt of the columns, phases fixed so column 0 keeps its direction"""
    q, r = qr(vectors, mode="economic")
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_trial_bases(
    sector: OperatorBasis,
    kept: np.ndarray,
    count: int,
    rng: np.random.Generator,
) -> List[OperatorBasis]:
    """Bases that start with ``kept`` and complete it with a Haar-random rotation

    Everything is built inside the span of ``sector`` so each basis is
    complete on that sector.
    """
    kept = np.atleast_2d(kept)
    coords = sector.vectors.conj() @ kept.T / sector.dim
    residual = kept.T - sector.vectors.T @ coords
    if np.max(np.abs(residual)) > 1e-8:
        raise InvalidArgumentError("Kept elements leave the sector")

    head = _orthonormal_columns(coords)
    complement = null_space(head.conj().T)
    n_free = complement.shape[1]

    bases = []
    for i in range(count):
        if n_free > 1:
            rotated = complement @ unitary_group.rvs(n_free, random_state=rng)
        else:
            rotated = complement
        columns = np.hstack([head, rotated])
        bases.append(
            OperatorBasis(
                label=f"random-{i}",
                vectors=columns.T @ sector.vectors,
                dim=sector.dim,
            )
        )
    return bases


def orthonormalized_krylov_basis(krylov: KrylovData) -> OperatorBasis:
    """Right Krylov vectors orthonormalized in order, same nested spans"""
    scale = np.sqrt(krylov.hilbert_dim)
    q = _orthonormal_columns(krylov.right_basis.T / scale)
    return OperatorBasis(label="krylov-orthonormalized", vectors=q.T * scale, dim=krylov.hilbert_dim)


def _loglog_slope(times: np.ndarray, values: np.ndarray) -> float:
    return float(np.polyfit(np.log(times), np.log(values), 1)[0])


def lemma_check(
    superoperator: Superoperator,
    x0: OperatorVector,
    krylov: KrylovData,
    m: int,
    trial_bases: Sequence[OperatorBasis],
    times: Sequence[float],
    weighting: KrylovWeighting = KrylovWeighting.ORTHONORMALIZED,
    slope_tolerance: float = 0.05,
    config: Settings = settings,
) -> LemmaReport:
    times = np.asarray(times, dtype=float)
    if m < 1:
        raise InvalidArgumentError(f"m must be at least 1, got {m}")
    if np.any(times <= 0) or times.max() > 0.1 + 1e-12:
        raise InvalidArgumentError("Lemma times must lie in (0, 0.1]")
    if krylov.dim < m:
        raise InvalidArgumentError(f"Krylov dimension {krylov.dim} is smaller than m={m}")
    for basis in trial_bases:
        error = orthonormality_error(basis)
        if error > 1e-8:
            raise InvalidArgumentError(
                f"Trial basis '{basis.label}' is not orthonormal (error {error:.2e})"
            )

    evolved = evolve_full(superoperator, x0, times, PropagationMethod.EXPM, config)

    if KrylovWeighting(weighting) == KrylovWeighting.ORTHONORMALIZED:
        reference = orthonormalized_krylov_basis(krylov)
        krylov_entropy = np.array([
            spread_complexity(
                population_distribution(x, reference, check_completeness=False, config=config)
            ).entropy
            for x in evolved
        ])
    else:
        amplitudes = project_krylov(krylov, evolved)
        krylov_entropy = np.array([
            spread_complexity(krylov_population(p, q)).entropy
            for p, q in zip(amplitudes.p, amplitudes.q)
        ])

    expected = 2 * m
    leading = times <= 10 * times.min()
    if np.count_nonzero(leading) < 2:
        leading = np.arange(times.shape[0]) < 2
    trials = []
    for basis in trial_bases:
        distributions = [population_distribution(x, basis, config=config) for x in evolved]
        populations = np.array([d.probabilities for d in distributions])
        entropy = np.array([spread_complexity(d).entropy for d in distributions])

        tail_slope = _loglog_slope(times, populations[:, m:].sum(axis=1))
        # leading decade only; reported, not part of slope_ok
        element_slopes = [
            _loglog_slope(times[leading], populations[leading, n])
            for n in range(m, basis.size)
            if np.all(populations[leading, n] > ELEMENT_FLOOR)
        ]
        min_element: Optional[float] = min(element_slopes) if element_slopes else None
        slope_ok = abs(tail_slope - expected) <= slope_tolerance * expected
        violation = float(np.max(krylov_entropy - entropy))
        trials.append(
            TrialBasisResult(
                label=basis.label,
                tail_slope=tail_slope,
                min_element_slope=min_element,
                slope_ok=slope_ok,
                max_violation=violation,
                minimal=violation <= MINIMALITY_SLACK,
            )
        )
        if not slope_ok:
            log.warning("Basis {} tail slope {:.4f}, expected {}", basis.label, tail_slope, expected)

    return LemmaReport(
        m=m,
        mu=superoperator.mu,
        weighting=KrylovWeighting(weighting),
        expected_slope=expected,
        slope_tolerance=slope_tolerance,
        times=times.tolist(),
        krylov_entropy=krylov_entropy.tolist(),
        trials=trials,
    )
