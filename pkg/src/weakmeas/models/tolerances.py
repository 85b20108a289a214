"""Numerical tolerance record shared by every operation."""

import pydantic

from weakmeas import consts


class Tolerances(pydantic.BaseModel):
    """Numerical tolerances used by the library.

    Structural checks default to 1e-10 and accumulated sums to 1e-9. Operations accept an optional
    `Tolerances` instance; pydantic models read one from the validation context under the key
    ``"tolerances"``.
    """

    model_config = pydantic.ConfigDict(frozen=True, extra="forbid")

    state_norm: float = pydantic.Field(default=consts.STATE_NORM_TOL, gt=0)
    hermitian: float = pydantic.Field(default=consts.HERMITIAN_TOL, gt=0)
    orthonormal: float = pydantic.Field(default=consts.ORTHONORMAL_TOL, gt=0)
    model_sum: float = pydantic.Field(default=consts.MODEL_SUM_TOL, gt=0)
    vanishing_overlap: float = pydantic.Field(default=consts.VANISHING_OVERLAP, gt=0)
    real_basis: float = pydantic.Field(default=consts.REAL_BASIS_TOL, gt=0)
    accumulated: float = pydantic.Field(default=consts.ACCUMULATED_TOL, gt=0)
    zero_vector: float = pydantic.Field(default=consts.ZERO_VECTOR_TOL, gt=0)
    gram_schmidt_residual: float = pydantic.Field(default=consts.GRAM_SCHMIDT_RESIDUAL, gt=0)
    real_representable: float = pydantic.Field(default=consts.REAL_REPRESENTABLE_TOL, gt=0)
    shunt_expectation: float = pydantic.Field(default=consts.SHUNT_EXPECTATION_TOL, gt=0)
    shunt_norm: float = pydantic.Field(default=consts.SHUNT_NORM_TOL, gt=0)
    weak_regime: float = pydantic.Field(default=consts.WEAK_REGIME_LIMIT, gt=0)
    exact_normalization: float = pydantic.Field(default=consts.EXACT_NORMALIZATION_TOL, gt=0)
    zero_information: float = pydantic.Field(default=consts.ZERO_INFORMATION, gt=0)


DEFAULT_TOLERANCES = Tolerances()
