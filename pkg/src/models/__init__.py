"""
Models package for the Krylov spread simulator
"""

from .base import (
    ArrayModel, BaseResponse, BasisName, KrylovWeighting, Parity,
    PopulationConvention, PropagationMethod, TerminationReason,
)
from .operators import MajoranaSet, MajoranaString, OperatorBasis, OperatorVector, StringBasis
from .syk import CouplingTensor, DisorderSpec
from .lindbladian import Superoperator
from .krylov import GrowthFit, KrylovData, KrylovDiagnostics
from .observables import (
    ComplexitySeries, EvolvedOperator, KrylovAmplitudes, LemmaReport,
    PopulationDistribution, SpreadMeasure, TrialBasisResult,
)
from .experiment import (
    AggregateTable, CheckResult, ExperimentConfig, Manifest,
    RealizationResult, ResultsBundle, VerificationReport,
)

__all__ = [
    # Base
    "ArrayModel", "BaseResponse", "BasisName", "KrylovWeighting", "Parity",
    "PopulationConvention", "PropagationMethod", "TerminationReason",

    # Operators and model
    "MajoranaSet", "MajoranaString", "OperatorBasis", "OperatorVector", "StringBasis",
    "CouplingTensor", "DisorderSpec", "Superoperator",

    # Krylov
    "GrowthFit", "KrylovData", "KrylovDiagnostics",

    # Observables
    "ComplexitySeries", "EvolvedOperator", "KrylovAmplitudes", "LemmaReport",
    "PopulationDistribution", "SpreadMeasure", "TrialBasisResult",

    # Experiment
    "AggregateTable", "CheckResult", "ExperimentConfig", "Manifest",
    "RealizationResult", "ResultsBundle", "VerificationReport",
]
