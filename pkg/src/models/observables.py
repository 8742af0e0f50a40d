"""
Observable models: evolved operators, populations, complexity series and lemma reports
"""

from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field

from .base import ArrayModel, KrylovWeighting, PropagationMethod
from .operators import OperatorVector


class EvolvedOperator(ArrayModel):
    """X_t = e^{iℒt}X₀ at one grid time"""
    time: float
    vector: OperatorVector
    norm_sq: float = Field(ge=0)


class KrylovAmplitudes(ArrayModel):
    """Chain amplitudes pₙ(t) = (Õₙ|X_t) and qₙ(t) = (X_t|Oₙ), one row per time"""
    times: np.ndarray
    p: np.ndarray
    q: np.ndarray
    method: PropagationMethod


class PopulationDistribution(ArrayModel):
    """Normalized weights over the elements of one basis"""
    probabilities: np.ndarray
    basis_label: str


class SpreadMeasure(BaseModel):
    """Spread entropy F and spread complexity C = e^F"""
    entropy: float
    complexity: float


class ComplexitySeries(ArrayModel):
    """Per-realization time series of every observable"""
    times: np.ndarray
    K: np.ndarray
    C_krylov: np.ndarray
    C_string: np.ndarray
    F_krylov: np.ndarray
    F_string: np.ndarray
    norm: np.ndarray
    mean_size: np.ndarray
    dim: int
    min_coherence: float = 1.0
    flagged: bool = False


class TrialBasisResult(BaseModel):
    """Lemma outcome for one trial basis"""
    label: str
    tail_slope: float
    min_element_slope: Optional[float]
    slope_ok: bool
    max_violation: float
    minimal: bool


class LemmaReport(BaseModel):
    """Small-time Taylor order and minimality checks against the Krylov basis"""
    m: int
    mu: float
    weighting: KrylovWeighting
    expected_slope: int
    slope_tolerance: float
    times: List[float]
    krylov_entropy: List[float]
    trials: List[TrialBasisResult]

    @property
    def slopes_ok(self) -> bool:
        return all(t.slope_ok for t in self.trials)

    @property
    def minimal(self) -> bool:
        return all(t.minimal for t in self.trials)

    @property
    def passed(self) -> bool:
        return self.slopes_ok and self.minimal
