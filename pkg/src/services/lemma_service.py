"""
Lemma sweeps over dissipation strengths, realizations and orders
"""

from typing import Callable, List, Optional

import numpy as np
from tqdm import tqdm

from src.core.config import Settings, settings
from src.core.logging import get_logger
from src.database.repository import ResultsRepository
from src.models.base import KrylovWeighting, Parity
from src.models.experiment import ExperimentConfig
from src.models.observables import LemmaReport
from src.services.bilanczos import bi_lanczos
from src.services.experiment_service import disorder_spec
from src.services.lemma import lemma_check, random_trial_bases, trial_rng
from src.services.lindbladian import build_full
from src.services.operator_algebra import (
    build_majoranas,
    build_string_basis,
    operator_parity,
    parse_operator,
)
from src.services.syk_model import build_hamiltonian, sample_couplings

log = get_logger("lemma")


class LemmaService:
    """Runs lemma checks for every (μ, realization, m) of a configuration"""

    def __init__(
        self,
        repository_factory: Callable[[str], ResultsRepository] = ResultsRepository,
        config: Settings = settings,
    ):
        self.repository_factory = repository_factory
        self.settings = config

    def run(self, config: ExperimentConfig) -> List[LemmaReport]:
        majoranas = build_majoranas(config.N, self.settings)
        x0 = parse_operator(config.initial_operator, majoranas)
        sector = build_string_basis(
            majoranas, operator_parity(config.initial_operator) or Parity.EVEN
        )
        times = config.lemma_time_grid()
        spec = disorder_spec(config).model_copy(
            update={"n_realizations": max(config.lemma_realizations, config.n_realizations)}
        )

        reports = []
        for realization in tqdm(range(config.lemma_realizations), desc="lemma realizations"):
            hamiltonian = build_hamiltonian(sample_couplings(spec, realization), majoranas)
            for mu in config.lemma_mu_values:
                superoperator = build_full(
                    hamiltonian, majoranas, mu, config.fermionic, self.settings
                )
                krylov = bi_lanczos(
                    superoperator, x0, tol=config.tol, alignment_tol=config.alignment_tol,
                    config=self.settings,
                )
                for m in config.lemma_m_values:
                    if krylov.dim < m:
                        log.warning(
                            "Skipping m={} at mu={}: Krylov dimension is {}", m, mu, krylov.dim
                        )
                        continue
                    trials = random_trial_bases(
                        sector,
                        krylov.right_basis[:m],
                        config.lemma_trial_bases,
                        trial_rng(config.seed, realization, m),
                    )
                    if m == 1 and np.allclose(sector.vectors[0], x0.data):
                        trials.append(sector)
                    for weighting in KrylovWeighting:
                        report = lemma_check(
                            superoperator, x0, krylov, m, trials, times, weighting,
                            config=self.settings,
                        )
                        if not report.passed:
                            log.warning(
                                "Lemma check failed: mu={} realization={} m={} weighting={}",
                                mu, realization, m, weighting.value,
                            )
                        reports.append(report)
        return reports

    def run_and_save(self, config: ExperimentConfig, outputs: Optional[str] = None) -> List[LemmaReport]:
        reports = self.run(config)
        path = self.repository_factory(outputs or config.outputs).save_lemma(reports)
        log.info("Wrote {} lemma reports to {}", len(reports), path)
        return reports


# Default service instance
lemma_service = LemmaService()
