"""Monte Carlo sampling and estimation results."""

import typing

import numpy as np
import pydantic

from weakmeas.models.common import CountMatrix, FrozenModel


class SampleCounts(FrozenModel):
    """Outcome counts from `n_total` simulated weak measurements.

    `counts[i, k]` belongs to model outcome ``outcomes[i]`` and basis vector ``labels[k]``.
    """

    outcomes: tuple[str, ...]
    labels: tuple[str, ...]
    counts: CountMatrix
    n_total: int = pydantic.Field(ge=1)
    seed: int
    epsilon_true: float

    @pydantic.model_validator(mode="after")
    def _check_counts(self) -> typing.Self:
        expected = (len(self.outcomes), len(self.labels))
        if self.counts.shape != expected:
            raise ValueError(f"counts have shape {self.counts.shape}, expected {expected}")
        if np.any(self.counts < 0):
            raise ValueError("counts must be non-negative")
        total = int(self.counts.sum())
        if total != self.n_total:
            raise ValueError(f"counts sum to {total}, expected n_total={self.n_total}")
        return self

    @property
    def entries(self) -> dict[tuple[str, str], int]:
        """Mapping (m, f) → count."""
        return {
            (m, f): int(self.counts[i, k]) for i, m in enumerate(self.outcomes) for k, f in enumerate(self.labels)
        }


class EstimationResult(FrozenModel):
    """Maximum-likelihood estimate of ε."""

    epsilon_hat: float
    stderr_predicted: float | None
    log_likelihood: float
    iterations: int
    converged: bool
    score: float


class TrialSummary(FrozenModel):
    """Aggregate of repeated sample-and-estimate runs over consecutive seeds."""

    epsilon_true: float
    n: int
    seeds: tuple[int, ...]
    estimates: tuple[float, ...]
    score_estimates: tuple[float, ...]
    mean: float
    std: float
    bias: float
    stderr_predicted: float | None
    ratio: float | None
    converged: int
