"""Weak-measurement value types: pointer models, validation reports and joint distributions."""

import enum
import typing

import numpy as np
import pydantic

from weakmeas import consts, exceptions
from weakmeas.models.common import FrozenModel, RealMatrix, RealVector


class Coupling(enum.StrEnum):
    """How the coupling parameter enters the measurement operators."""

    REAL = "real"
    IMAGINARY = "imaginary"


class DistributionMode(enum.StrEnum):
    """Which probability engine produced a distribution."""

    FIRST_ORDER = "first-order"
    EXACT = "exact"


class MeasurementModel(FrozenModel):
    """Weak pointer with outcomes m, prior probabilities w_m and correlation factors κ_m.

    Only structural consistency is enforced on construction. The normalization conditions
    (Σw = 1, Σwκ = 0, Σwκ² = 1, w > 0) are checked by `weakmeas.measurement.validate_model`,
    which reports rather than raises.
    """

    outcomes: tuple[str, ...]
    weights: RealVector
    correlations: RealVector

    @pydantic.model_validator(mode="after")
    def _check_structure(self) -> typing.Self:
        n = len(self.outcomes)
        if n < 2:
            raise ValueError(f"a pointer model needs at least 2 outcomes, got {n}")
        if len(set(self.outcomes)) != n:
            raise ValueError("outcome labels must be unique")
        if self.weights.shape[0] != n or self.correlations.shape[0] != n:
            raise ValueError(
                f"got {self.weights.shape[0]} weights and {self.correlations.shape[0]} correlations for {n} outcomes"
            )
        return self

    @property
    def n_outcomes(self) -> int:
        """Number of pointer outcomes."""
        return len(self.outcomes)

    @property
    def max_abs_correlation(self) -> float:
        """max_m |κ_m|."""
        return float(np.max(np.abs(self.correlations)))

    def index(self, label: str) -> int:
        """Position of outcome `label` in the model order.

        Raises:
            UnknownOutcomeError: If the label is not a model outcome.
        """
        try:
            return self.outcomes.index(label)
        except ValueError:
            raise exceptions.UnknownOutcomeError(label, self.outcomes) from None

    @classmethod
    def binary(cls) -> "MeasurementModel":
        """The canonical two-outcome pointer: w = (½, ½), κ = (+1, −1)."""
        return cls(outcomes=consts.BINARY_OUTCOMES, weights=[0.5, 0.5], correlations=[1.0, -1.0])


class ModelCheck(FrozenModel):
    """Outcome of a single model normalization check."""

    name: str
    passed: bool
    residual: float
    tolerance: float


class ModelValidationReport(FrozenModel):
    """Pass/fail result for every measurement-model invariant."""

    checks: tuple[ModelCheck, ...]

    @property
    def ok(self) -> bool:
        """Whether every check passed."""
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[str]:
        """Names of the failed checks."""
        return [c.name for c in self.checks if not c.passed]


class JointDistribution(FrozenModel):
    """Joint probabilities p(m, f) of pointer outcome m and final outcome f.

    `probabilities[i, k]` belongs to model outcome ``outcomes[i]`` and basis vector ``labels[k]``.
    """

    outcomes: tuple[str, ...]
    labels: tuple[str, ...]
    probabilities: RealMatrix
    epsilon: float
    mode: DistributionMode
    coupling: Coupling = Coupling.REAL
    warnings: tuple[str, ...] = ()

    @pydantic.model_validator(mode="after")
    def _check_shape(self) -> typing.Self:
        expected = (len(self.outcomes), len(self.labels))
        if self.probabilities.shape != expected:
            raise ValueError(f"probabilities have shape {self.probabilities.shape}, expected {expected}")
        return self

    @property
    def entries(self) -> dict[tuple[str, str], float]:
        """Mapping (m, f) → p(m, f)."""
        return {
            (m, f): float(self.probabilities[i, k])
            for i, m in enumerate(self.outcomes)
            for k, f in enumerate(self.labels)
        }

    @property
    def total(self) -> float:
        """Σ p(m, f)."""
        return float(np.sum(self.probabilities))

    @property
    def final_marginal(self) -> np.ndarray:
        """Σ_m p(m, f) per basis vector."""
        return self.probabilities.sum(axis=0)

    @property
    def has_negative(self) -> bool:
        """Whether any entry is negative (possible only for the first-order engine)."""
        return bool(np.any(self.probabilities < 0))

    def prob(self, m: str, f: str) -> float:
        """Return p(m, f) for outcome label `m` and basis label `f`."""
        try:
            i = self.outcomes.index(m)
        except ValueError:
            raise exceptions.UnknownOutcomeError(m, self.outcomes) from None
        try:
            k = self.labels.index(f)
        except ValueError:
            raise exceptions.UnknownOutcomeError(f, self.labels) from None
        return float(self.probabilities[i, k])
