"""Common models for the weakmeas package.

Numpy arrays are carried inside pydantic models through the annotated field types defined here.
Complex numbers cross the JSON boundary as ``[re, im]`` pairs; arrays are stored read-only so that
the frozen models built on them are true value objects.
"""

import json
import typing

import numpy as np
import pydantic
import structlog

from weakmeas.models.tolerances import DEFAULT_TOLERANCES, Tolerances

logger = structlog.get_logger(__name__)


def _complex_entry(value: typing.Any) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError("complex numbers must be given as [re, im] pairs")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (str, bytes)):
        raise ValueError("complex numbers must be numeric or [re, im] pairs")
    return complex(value)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _to_complex_vector(value: typing.Any) -> np.ndarray:
    if isinstance(value, np.ndarray):
        array = np.array(value, dtype=complex)
    else:
        array = np.array([_complex_entry(v) for v in value], dtype=complex)
    if array.ndim != 1:
        raise ValueError(f"expected a vector, got an array of shape {array.shape}")
    return _frozen(array)


def _to_complex_matrix(value: typing.Any) -> np.ndarray:
    if isinstance(value, np.ndarray):
        array = np.array(value, dtype=complex)
    else:
        array = np.array([[_complex_entry(v) for v in row] for row in value], dtype=complex)
    if array.ndim != 2:
        raise ValueError(f"expected a matrix, got an array of shape {array.shape}")
    return _frozen(array)


def _to_real_vector(value: typing.Any) -> np.ndarray:
    array = np.array(value, dtype=float)
    if array.ndim != 1:
        raise ValueError(f"expected a vector, got an array of shape {array.shape}")
    return _frozen(array)


def _to_real_matrix(value: typing.Any) -> np.ndarray:
    array = np.array(value, dtype=float)
    if array.ndim != 2:
        raise ValueError(f"expected a matrix, got an array of shape {array.shape}")
    return _frozen(array)


def _to_count_matrix(value: typing.Any) -> np.ndarray:
    array = np.array(value)
    if array.ndim != 2:
        raise ValueError(f"expected a matrix, got an array of shape {array.shape}")
    if not np.issubdtype(array.dtype, np.integer):
        if not np.all(np.equal(np.mod(array, 1), 0)):
            raise ValueError("counts must be integers")
    return _frozen(array.astype(np.int64))


def complex_pair(value: complex) -> list[float]:
    """Serialize a complex number as an ``[re, im]`` pair."""
    return [float(value.real), float(value.imag)]


def _pairs(array: np.ndarray) -> list:
    if array.ndim == 1:
        return [complex_pair(v) for v in array]
    return [[complex_pair(v) for v in row] for row in array]


ComplexNumber = typing.Annotated[
    complex,
    pydantic.PlainValidator(_complex_entry),
    pydantic.PlainSerializer(complex_pair, when_used="json"),
]
ComplexVector = typing.Annotated[
    np.ndarray,
    pydantic.PlainValidator(_to_complex_vector),
    pydantic.PlainSerializer(_pairs, when_used="json"),
]
ComplexMatrix = typing.Annotated[
    np.ndarray,
    pydantic.PlainValidator(_to_complex_matrix),
    pydantic.PlainSerializer(_pairs, when_used="json"),
]
RealVector = typing.Annotated[
    np.ndarray,
    pydantic.PlainValidator(_to_real_vector),
    pydantic.PlainSerializer(lambda a: [float(v) for v in a], when_used="json"),
]
RealMatrix = typing.Annotated[
    np.ndarray,
    pydantic.PlainValidator(_to_real_matrix),
    pydantic.PlainSerializer(lambda a: [[float(v) for v in row] for row in a], when_used="json"),
]
CountMatrix = typing.Annotated[
    np.ndarray,
    pydantic.PlainValidator(_to_count_matrix),
    pydantic.PlainSerializer(lambda a: [[int(v) for v in row] for row in a], when_used="json"),
]


def context_tolerances(info: pydantic.ValidationInfo) -> Tolerances:
    """Return the `Tolerances` passed in the validation context, or the defaults."""
    if isinstance(info.context, dict):
        tolerances = info.context.get("tolerances")
        if isinstance(tolerances, Tolerances):
            return tolerances
    return DEFAULT_TOLERANCES


class FrozenModel(pydantic.BaseModel):
    """Immutable value object that may hold numpy arrays."""

    model_config = pydantic.ConfigDict(frozen=True, arbitrary_types_allowed=True, extra="forbid")


class WarnExtraFieldsModel(pydantic.BaseModel):
    """Base model for input documents that logs a warning if extra fields are present."""

    model_config = pydantic.ConfigDict(extra="allow", arbitrary_types_allowed=True)

    @pydantic.model_validator(mode="after")
    def _warn_extra_fields(self) -> typing.Self:
        if self.__pydantic_extra__:
            logger.warning(
                f"Model {self.__class__.__name__} received unknown fields: {list(self.__pydantic_extra__.keys())}"
            )
            logger.debug("Full JSON", json=json.dumps(self.__pydantic_extra__, default=str))
        return self
