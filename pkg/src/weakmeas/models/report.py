"""Report documents emitted by the CLI."""

import typing

import pydantic

from weakmeas.models.analysis import FisherReport, WeakValueTable
from weakmeas.models.common import FrozenModel
from weakmeas.models.estimate import EstimationResult, SampleCounts, TrialSummary


class SensitivitySummary(FrozenModel):
    """How close a strategy comes to the bound 4⟨A²⟩."""

    max_sensitivity: float
    saturation_ratio: float
    fisher_phase: float


class SimulationSummary(FrozenModel):
    """Sampled counts and the estimates derived from them."""

    counts: SampleCounts
    mle: EstimationResult
    score_estimate: float | None
    pointer_shifts: tuple[float, ...]
    trials: TrialSummary | None = None


class ScanRow(FrozenModel):
    """One post-selection angle of a qubit basis scan."""

    theta: float
    max_abs_weak_value: float
    post_prob_first: float
    fisher_total: float
    undefined: tuple[str, ...] = ()


class Report(FrozenModel):
    """Machine-readable result of one CLI command.

    Every numeric field is a function of the input file and the seed alone.
    """

    schema_version: str
    weakmeas_version: str
    command: str
    arguments: dict[str, typing.Any] = pydantic.Field(default_factory=dict)
    input_digest: str
    weak_values: WeakValueTable | None = None
    is_real_basis: bool | None = None
    fisher: FisherReport | None = None
    sensitivity: SensitivitySummary | None = None
    simulation: SimulationSummary | None = None
    scan: tuple[ScanRow, ...] | None = None
    warnings: tuple[str, ...] = ()
