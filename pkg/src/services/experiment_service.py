"""
Experiment service: disorder loop, ensemble averaging and result emission
"""

from collections import defaultdict
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm
from tqdm.contrib.concurrent import process_map

from src import __version__
from src.core.config import Settings, settings
from src.core.exceptions import (
    AbortedRunError,
    BasisIncompleteError,
    DegenerateStateError,
    InvalidArgumentError,
    NumericalBreakdownError,
)
from src.core.logging import get_logger
from src.database.repository import ResultsRepository, coefficient_key, coefficient_table
from src.models.base import BasisName, Parity
from src.models.experiment import (
    AggregateTable,
    ExperimentConfig,
    Manifest,
    RealizationResult,
    ResultsBundle,
)
from src.models.syk import DisorderSpec
from src.services.bilanczos import bi_lanczos, fit_lanczos_growth
from src.services.lindbladian import build_full
from src.services.observables import complexity_series
from src.services.operator_algebra import (
    build_majoranas,
    build_string_basis,
    operator_norm_sq,
    operator_parity,
    parse_operator,
)
from src.services.syk_model import build_hamiltonian, sample_couplings

log = get_logger("experiment")

SERIES_FIELDS = ("K", "C_krylov", "C_string", "norm", "mean_size")
SATURATION_FRACTION = 0.2
RECOVERABLE_ERRORS = (NumericalBreakdownError, DegenerateStateError, BasisIncompleteError)


def disorder_spec(config: ExperimentConfig) -> DisorderSpec:
    return DisorderSpec(
        J=config.J,
        q=config.q,
        N=config.N,
        seed=config.seed,
        n_realizations=config.n_realizations,
    )


def run_realization(
    config: ExperimentConfig, realization: int, app_settings: Settings = settings
) -> List[RealizationResult]:
    """One disorder sample swept over every μ with the same couplings"""
    majoranas = build_majoranas(config.N, app_settings)
    x0 = parse_operator(config.initial_operator, majoranas)
    string_basis = None
    if BasisName.STRING in config.bases:
        parity = operator_parity(config.initial_operator) or Parity.EVEN
        string_basis = build_string_basis(majoranas, parity)

    hamiltonian = build_hamiltonian(sample_couplings(disorder_spec(config), realization), majoranas)
    times = config.time_grid()

    results = []
    for mu in config.mu_values:
        try:
            superoperator = build_full(hamiltonian, majoranas, mu, config.fermionic, app_settings)
            krylov = bi_lanczos(
                superoperator,
                x0,
                tol=config.tol,
                max_dim=config.max_dim or None,
                alignment_tol=config.alignment_tol,
                config=app_settings,
            )
            series = complexity_series(
                superoperator,
                x0,
                krylov,
                times,
                string_basis=string_basis,
                convention=config.population_convention,
                config=app_settings,
            )
        except RECOVERABLE_ERRORS as exc:
            log.warning("Realization {} at mu={} excluded: {}", realization, mu, exc)
            results.append(RealizationResult(mu=mu, realization=realization, error=str(exc)))
            continue

        growth = fit_lanczos_growth(krylov, config.growth_fit_points)
        results.append(
            RealizationResult(
                mu=mu,
                realization=realization,
                series=series,
                coefficients=coefficient_table(krylov.a, krylov.b, krylov.c),
                krylov_dim=krylov.dim,
                growth_alpha=growth.alpha if growth else None,
                termination_reason=krylov.termination_reason.value,
            )
        )
    return results


def _realization_task(task: Tuple[ExperimentConfig, int, Settings]) -> List[RealizationResult]:
    config, realization, app_settings = task
    return run_realization(config, realization, app_settings)


def aggregate(results: Sequence[RealizationResult], mu: float) -> AggregateTable:
    """Per-time means and unbiased variances over successful realizations"""
    matching = [r for r in results if r.mu == mu]
    successes = sorted((r for r in matching if r.succeeded), key=lambda r: r.realization)
    if not successes:
        raise AbortedRunError(f"No successful realization for mu={mu}")

    count = len(successes)
    means: Dict[str, np.ndarray] = {}
    variances: Dict[str, np.ndarray] = {}
    for field in SERIES_FIELDS:
        stack = np.array([getattr(r.series, field) for r in successes])
        means[field] = stack.mean(axis=0)
        variances[field] = stack.var(axis=0, ddof=1) if count > 1 else np.zeros(stack.shape[1])

    dims = np.array([r.krylov_dim for r in successes], dtype=float)
    alphas = [r.growth_alpha for r in successes if r.growth_alpha is not None]
    return AggregateTable(
        mu=mu,
        times=successes[0].series.times,
        means=means,
        variances=variances,
        n_success=count,
        n_excluded=len(matching) - count,
        mk_mean=float(dims.mean()),
        mk_var=float(dims.var(ddof=1)) if count > 1 else 0.0,
        growth_alpha_mean=float(np.mean(alphas)) if alphas else None,
        n_flagged=sum(1 for r in successes if r.series.flagged),
    )


def k_saturation(table: AggregateTable) -> float:
    """Mean K over the last fraction of the grid"""
    n_tail = max(1, int(round(SATURATION_FRACTION * table.times.shape[0])))
    return float(table.means["K"][-n_tail:].mean())


def _records(frame: Optional[pd.DataFrame]) -> Optional[List[Dict[str, Optional[float]]]]:
    """Table rows with NaN replaced by None"""
    if frame is None:
        return None
    return frame.astype(object).where(frame.notna(), None).to_dict(orient="records")


def strictly_decreasing(values: Sequence[float]) -> bool:
    return all(later < earlier for earlier, later in zip(values, values[1:]))


class ExperimentService:
    """Runs experiment configurations and persists their results"""

    def __init__(
        self,
        repository_factory: Callable[[str], ResultsRepository] = ResultsRepository,
        config: Settings = settings,
    ):
        self.repository_factory = repository_factory
        self.settings = config

    def validate(self, config: ExperimentConfig) -> None:
        """Fail fast on guards that would fail every realization"""
        if config.q > config.N:
            raise InvalidArgumentError(f"q={config.q} exceeds N={config.N}")
        majoranas = build_majoranas(config.N, self.settings)
        x0 = parse_operator(config.initial_operator, majoranas)
        norm_sq = operator_norm_sq(x0)
        if abs(norm_sq - 1.0) > 1e-10:
            raise InvalidArgumentError(
                f"Initial operator '{config.initial_operator}' has (X0|X0) = {norm_sq}, expected 1"
            )

    def run(self, config: ExperimentConfig, workers: Optional[int] = None) -> ResultsBundle:
        self.validate(config)
        workers = workers or self.settings.default_workers
        tasks = [(config, r, self.settings) for r in range(config.n_realizations)]
        log.info(
            "Running {} realizations x {} mu values with {} worker(s)",
            config.n_realizations, len(config.mu_values), workers,
        )

        if workers > 1:
            batches = process_map(
                _realization_task, tasks, max_workers=workers, chunksize=1, desc="realizations"
            )
        else:
            batches = [_realization_task(t) for t in tqdm(tasks, desc="realizations")]
        results = [r for batch in batches for r in batch]

        return self.assemble(config, results)

    def assemble(self, config: ExperimentConfig, results: Sequence[RealizationResult]) -> ResultsBundle:
        """Apply the failure policy, aggregate and build the manifest"""
        by_mu: Dict[float, List[RealizationResult]] = defaultdict(list)
        for result in results:
            by_mu[result.mu].append(result)

        exclusions = {}
        for mu in config.mu_values:
            failed = sum(1 for r in by_mu[mu] if not r.succeeded)
            exclusions[f"{mu:.4f}"] = failed
            if failed > self.settings.failure_fraction_limit * config.n_realizations:
                raise AbortedRunError(
                    f"{failed} of {config.n_realizations} realizations failed at mu={mu}"
                )

        tables = [aggregate(by_mu[mu], mu) for mu in config.mu_values]
        coefficients = {
            coefficient_key(r.mu, r.realization): r.coefficients
            for r in sorted(results, key=lambda r: (r.mu, r.realization))
            if r.succeeded
        }

        saturation = {f"{t.mu:.4f}": k_saturation(t) for t in tables}
        manifest = Manifest(
            version=__version__,
            seed=config.seed,
            config=config.model_dump(mode="json"),
            exclusions=exclusions,
            growth_alpha={f"{t.mu:.4f}": t.growth_alpha_mean for t in tables},
            flagged={f"{t.mu:.4f}": t.n_flagged for t in tables},
            k_saturation=saturation,
            trends={
                "mk_decreasing": strictly_decreasing([t.mk_mean for t in tables]),
                "k_final_decreasing": strictly_decreasing([t.means["K"][-1] for t in tables]),
                "k_saturation_decreasing": strictly_decreasing([saturation[k] for k in saturation]),
            },
        )
        return ResultsBundle(manifest=manifest, tables=tables, coefficients=coefficients)

    def run_and_emit(
        self,
        config: ExperimentConfig,
        workers: Optional[int] = None,
        outputs: Optional[str] = None,
    ) -> Manifest:
        bundle = self.run(config, workers)
        paths = self.repository_factory(outputs or config.outputs).emit(bundle)
        log.info("Wrote {} files to {}", len(paths), outputs or config.outputs)
        return bundle.manifest

    def get_manifest(self, outputs: str) -> Optional[Manifest]:
        return self.repository_factory(outputs).load_manifest()

    def get_summary(self, outputs: str, mu: float) -> Optional[List[Dict[str, Optional[float]]]]:
        return _records(self.repository_factory(outputs).load_summary(mu))

    def get_dimensions(self, outputs: str) -> Optional[List[Dict[str, Optional[float]]]]:
        return _records(self.repository_factory(outputs).load_dimensions())


# Default service instance
experiment_service = ExperimentService()
