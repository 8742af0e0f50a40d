"""
Experiment configuration and result models
"""

from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .base import ArrayModel, BasisName, PopulationConvention
from .observables import ComplexitySeries


class ExperimentConfig(BaseModel):
    """Every key accepted by an experiment configuration file"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    N: int = Field(default=8, gt=0)
    q: int = Field(default=4, gt=0)
    J: float = Field(default=1.0, gt=0)
    mu_values: List[float] = Field(default_factory=lambda: [0.0, 0.025, 0.05, 0.075, 0.1])
    t_max: float = Field(default=120.0, ge=0)
    n_times: int = Field(default=241, gt=0)
    n_realizations: int = Field(default=200, gt=0)
    seed: int = Field(default=20240601, ge=0, lt=2**64)
    initial_operator: str = "sqrt2*psi1"
    bases: List[BasisName] = Field(default_factory=lambda: [BasisName.KRYLOV, BasisName.STRING])
    outputs: str = "results"
    tol: float = Field(default=1e-8, gt=0)
    alignment_tol: float = Field(default=1e-2, gt=0, lt=1)
    max_dim: int = Field(default=0, ge=0, description="0 means D²")
    fermionic: bool = True
    population_convention: PopulationConvention = PopulationConvention.MODULUS
    growth_fit_points: int = Field(default=10, ge=2)
    lemma_mu_values: List[float] = Field(default_factory=lambda: [0.0, 0.05])
    lemma_m_values: List[int] = Field(default_factory=lambda: [1, 2])
    lemma_realizations: int = Field(default=5, gt=0)
    lemma_trial_bases: int = Field(default=20, gt=0)
    lemma_n_times: int = Field(default=25, ge=3)

    @field_validator("N", "q")
    @classmethod
    def even(cls, v: int) -> int:
        if v % 2:
            raise ValueError(f"must be even, got {v}")
        return v

    @field_validator("mu_values", "lemma_mu_values")
    @classmethod
    def sorted_non_negative(cls, v: List[float]) -> List[float]:
        if not v:
            raise ValueError("at least one dissipation strength is required")
        if any(mu < 0 for mu in v):
            raise ValueError("dissipation strengths must be non-negative")
        if list(v) != sorted(v):
            raise ValueError("dissipation strengths must be sorted ascending")
        return v

    @field_validator("lemma_m_values")
    @classmethod
    def positive_orders(cls, v: List[int]) -> List[int]:
        if any(m < 1 for m in v):
            raise ValueError("lemma orders start at 1")
        return v

    @field_validator("bases")
    @classmethod
    def at_least_krylov(cls, v: List[BasisName]) -> List[BasisName]:
        if not v:
            raise ValueError("at least one basis is required")
        return v

    def time_grid(self) -> np.ndarray:
        """Linear Jt grid; collapses to the single point 0 when t_max is 0"""
        if self.t_max == 0:
            return np.zeros(1)
        return np.linspace(0.0, self.t_max, self.n_times)

    def lemma_time_grid(self) -> np.ndarray:
        """Log-spaced small-time window Jt ∈ [1e-3, 1e-1]"""
        return np.logspace(-3, -1, self.lemma_n_times)


class RealizationResult(ArrayModel):
    """Outcome of one (μ, realization) pipeline; failed runs carry only the error"""
    mu: float
    realization: int
    series: Optional[ComplexitySeries] = None
    coefficients: Optional[np.ndarray] = None  # columns n, re_a, im_a, b, c
    krylov_dim: int = 0
    growth_alpha: Optional[float] = None
    termination_reason: Optional[str] = None
    error: Optional[str] = None

    @property
    def succeeded(self) -> bool:
        return self.error is None


class AggregateTable(ArrayModel):
    """Means and unbiased variances over the successful realizations of one μ"""
    mu: float
    times: np.ndarray
    means: Dict[str, np.ndarray]
    variances: Dict[str, np.ndarray]
    n_success: int
    n_excluded: int
    mk_mean: float
    mk_var: float
    growth_alpha_mean: Optional[float] = None
    n_flagged: int = 0


class Manifest(BaseModel):
    """Everything needed to reproduce a run"""
    version: str
    seed: int
    config: Dict[str, object]
    exclusions: Dict[str, int] = Field(default_factory=dict)
    growth_alpha: Dict[str, Optional[float]] = Field(default_factory=dict)
    flagged: Dict[str, int] = Field(default_factory=dict)
    k_saturation: Dict[str, float] = Field(default_factory=dict)
    trends: Dict[str, bool] = Field(default_factory=dict)


class ResultsBundle(BaseModel):
    """Aggregated tables, per-realization coefficient tables and the manifest"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    manifest: Manifest
    tables: List[AggregateTable] = Field(default_factory=list)
    coefficients: Dict[str, np.ndarray] = Field(default_factory=dict)


class CheckResult(BaseModel):
    """One oracle or invariant check"""
    name: str
    passed: bool
    max_error: Optional[float] = None
    detail: str = ""


class VerificationReport(BaseModel):
    """Outcome of the oracle suite"""
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)
