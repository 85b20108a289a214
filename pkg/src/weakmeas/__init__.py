"""Weak measurements as parameter estimation.

This package computes weak values, outcome distributions and Fisher information for an unknown
coupling strength ε, constructs final-measurement strategies (eigenbasis, real-weak-value bases,
single-outcome "shunted" basis) and checks by Monte Carlo estimation that every real-weak-value
strategy reaches the sensitivity bound 4⟨A²⟩.

How to use the most important parts:
- Explore the submodules to understand the available features. Look closely at
  `hilbert`, `measurement`, `analysis`, `estimate` and `models`.
- `WeakMeasurementProblem`: Bundles a pointer model, observable, state and final basis. Start here
  for weak-value tables, Fisher reports and simulated estimation runs.
- `MeasurementModel.binary()`: The canonical two-outcome pointer (w = ½, κ = ±1).
"""

import logging

import structlog

# Set default library logging level to WARNING if the user hasn't configured structlog
if not structlog.is_configured():
    structlog.configure(wrapper_class=structlog.make_filtering_bound_logger(logging.WARNING))

from weakmeas.__version__ import __version__
from weakmeas.models import (
    FinalBasis,
    FisherReport,
    MeasurementModel,
    Observable,
    State,
    Tolerances,
    WeakValueTable,
)
from weakmeas.problem import WeakMeasurementProblem

__all__ = [
    "FinalBasis",
    "FisherReport",
    "MeasurementModel",
    "Observable",
    "State",
    "Tolerances",
    "WeakMeasurementProblem",
    "WeakValueTable",
    "__version__",
]
