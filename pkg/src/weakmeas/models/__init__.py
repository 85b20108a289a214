"""Pydantic models for weakmeas.

This module defines the typed, validated value objects used by every library module and by the
CLI's problem and report documents.
"""

from .analysis import FisherReport, WeakValueRecord, WeakValueTable
from .common import WarnExtraFieldsModel
from .estimate import EstimationResult, SampleCounts, TrialSummary
from .hilbert import FinalBasis, Observable, State
from .measurement import (
    Coupling,
    DistributionMode,
    JointDistribution,
    MeasurementModel,
    ModelCheck,
    ModelValidationReport,
)
from .problem import ExplicitBasis, ModelSpec, ProblemSpec, RealRandomChoice
from .report import Report, ScanRow, SensitivitySummary, SimulationSummary
from .tolerances import DEFAULT_TOLERANCES, Tolerances

# ruff: noqa: RUF022
__all__ = [
    # Hilbert space
    "FinalBasis",
    "Observable",
    "State",
    # Measurement
    "Coupling",
    "DistributionMode",
    "JointDistribution",
    "MeasurementModel",
    "ModelCheck",
    "ModelValidationReport",
    # Analysis
    "FisherReport",
    "WeakValueRecord",
    "WeakValueTable",
    # Estimation
    "EstimationResult",
    "SampleCounts",
    "TrialSummary",
    # Documents
    "ExplicitBasis",
    "ModelSpec",
    "ProblemSpec",
    "RealRandomChoice",
    "Report",
    "ScanRow",
    "SensitivitySummary",
    "SimulationSummary",
    "WarnExtraFieldsModel",
    # Config
    "DEFAULT_TOLERANCES",
    "Tolerances",
]
