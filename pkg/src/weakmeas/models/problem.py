"""Problem-file documents read by the CLI and `WeakMeasurementProblem.from_spec`."""

import typing

import numpy as np
import pydantic

from weakmeas.models.common import WarnExtraFieldsModel, context_tolerances
from weakmeas.models.hilbert import FinalBasis, Observable, State
from weakmeas.models.measurement import MeasurementModel
from weakmeas.models.tolerances import DEFAULT_TOLERANCES, Tolerances


def _wrap(key: str) -> typing.Callable[[typing.Any], typing.Any]:
    def wrap(value: typing.Any) -> typing.Any:
        if isinstance(value, (list, tuple, np.ndarray)):
            return {key: value}
        return value

    return wrap


ObservableInput = typing.Annotated[Observable, pydantic.BeforeValidator(_wrap("matrix"))]
StateInput = typing.Annotated[State, pydantic.BeforeValidator(_wrap("amplitudes"))]


class ModelSpec(pydantic.BaseModel):
    """Pointer model section of a problem file."""

    model_config = pydantic.ConfigDict(extra="forbid")

    weights: list[float]
    correlations: list[float]
    outcomes: list[str] | None = None

    def to_model(self) -> MeasurementModel:
        """Build the `MeasurementModel`, labelling outcomes ``m1 … mn`` when none are given."""
        outcomes = self.outcomes or [f"m{i + 1}" for i in range(len(self.weights))]
        return MeasurementModel(outcomes=tuple(outcomes), weights=self.weights, correlations=self.correlations)


class RealRandomChoice(pydantic.BaseModel):
    """``{"real-random": seed}``: a seeded random real orthogonal basis."""

    model_config = pydantic.ConfigDict(extra="forbid", populate_by_name=True)

    seed: int = pydantic.Field(alias="real-random")


class ExplicitBasis(pydantic.BaseModel):
    """An explicit list of basis vectors, optionally labelled."""

    model_config = pydantic.ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    vectors: list[StateInput]
    labels: list[str] | None = None

    def to_basis(self, tolerances: Tolerances = DEFAULT_TOLERANCES) -> FinalBasis:
        """Build the `FinalBasis` (checks completeness and orthonormality)."""
        return FinalBasis.model_validate(
            {"vectors": tuple(self.vectors), "labels": tuple(self.labels or ())}, context={"tolerances": tolerances}
        )


BasisChoice = typing.Literal["eigen", "shunted"] | RealRandomChoice | ExplicitBasis


class ProblemSpec(WarnExtraFieldsModel):
    """A weak-measurement problem as written in a problem file.

    Complex numbers are ``[re, im]`` pairs. The basis is ``"eigen"``, ``"shunted"``,
    ``{"real-random": seed}``, a list of vectors or ``{"vectors": [...], "labels": [...]}``.
    """

    dim: int = pydantic.Field(ge=2)
    observable: ObservableInput
    state: StateInput
    model: ModelSpec | None = None
    basis: BasisChoice = "eigen"
    epsilon: float | None = None
    samples: int | None = None
    seed: int | None = None

    @pydantic.field_validator("basis", mode="before")
    @classmethod
    def _vector_list(cls, value: typing.Any) -> typing.Any:
        if isinstance(value, list):
            return {"vectors": value}
        return value

    @pydantic.field_validator("samples")
    @classmethod
    def _positive_samples(cls, value: int | None) -> int | None:
        if value is not None and value < 1:
            raise ValueError("samples must be ≥ 1")
        return value

    @pydantic.model_validator(mode="after")
    def _check_consistency(self, info: pydantic.ValidationInfo) -> typing.Self:
        from weakmeas import measurement

        tolerances = context_tolerances(info)
        if self.observable.dim != self.dim:
            raise ValueError(f"observable has dimension {self.observable.dim}, expected dim={self.dim}")
        if self.state.dim != self.dim:
            raise ValueError(f"state has dimension {self.state.dim}, expected dim={self.dim}")
        if isinstance(self.basis, ExplicitBasis):
            if any(v.dim != self.dim for v in self.basis.vectors):
                raise ValueError(f"basis vectors must have dimension {self.dim}")
            self.basis.to_basis(tolerances)
        if self.model is not None:
            report = measurement.validate_model(self.model.to_model(), tolerances)
            if not report.ok:
                details = ", ".join(f"{c.name} (residual {c.residual:.3e})" for c in report.checks if not c.passed)
                raise ValueError(f"model fails normalization checks: {details}")
        return self

    @property
    def measurement_model(self) -> MeasurementModel:
        """The pointer model, defaulting to the canonical binary pointer."""
        return self.model.to_model() if self.model is not None else MeasurementModel.binary()
