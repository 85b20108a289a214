"""Hilbert-space value types: states, observables and final measurement bases."""

import typing

import numpy as np
import pydantic

from weakmeas.models.common import ComplexMatrix, ComplexVector, FrozenModel, context_tolerances


class State(FrozenModel):
    """A normalized pure state |ψ⟩ on a finite-dimensional Hilbert space."""

    amplitudes: ComplexVector

    @pydantic.field_validator("amplitudes")
    @classmethod
    def _check_normalized(cls, v: np.ndarray, info: pydantic.ValidationInfo) -> np.ndarray:
        if v.shape[0] < 2:
            raise ValueError(f"state dimension must be at least 2, got {v.shape[0]}")
        tol = context_tolerances(info).state_norm
        residual = abs(float(np.vdot(v, v).real) - 1.0)
        if residual > tol:
            raise ValueError(f"state is not normalized: |norm² - 1| = {residual:.3e} exceeds {tol:.0e}")
        return v

    @property
    def dim(self) -> int:
        """Dimension of the Hilbert space."""
        return int(self.amplitudes.shape[0])

    @property
    def imag_residual(self) -> float:
        """Largest |Im ψ_i|; 0 for a state with real amplitudes."""
        return float(np.max(np.abs(self.amplitudes.imag)))

    @classmethod
    def basis_state(cls, index: int, dim: int) -> "State":
        """Return the computational basis state |index⟩."""
        amplitudes = np.zeros(dim, dtype=complex)
        amplitudes[index] = 1.0
        return cls(amplitudes=amplitudes)


class Observable(FrozenModel):
    """A Hermitian operator Â, the target observable of the weak measurement."""

    matrix: ComplexMatrix

    @pydantic.field_validator("matrix")
    @classmethod
    def _check_hermitian(cls, v: np.ndarray, info: pydantic.ValidationInfo) -> np.ndarray:
        rows, cols = v.shape
        if rows != cols:
            raise ValueError(f"observable must be square, got shape {v.shape}")
        if rows < 2:
            raise ValueError(f"observable dimension must be at least 2, got {rows}")
        tol = context_tolerances(info).hermitian
        residual = float(np.max(np.abs(v - v.conj().T)))
        if residual > tol:
            raise ValueError(f"matrix is not Hermitian: residual {residual:.3e} exceeds {tol:.0e}")
        return v

    @property
    def dim(self) -> int:
        """Dimension of the Hilbert space the observable acts on."""
        return int(self.matrix.shape[0])

    @property
    def spectral_norm(self) -> float:
        """Operator 2-norm ‖A‖₂ (largest absolute eigenvalue)."""
        return float(np.linalg.norm(self.matrix, ord=2))

    @property
    def imag_residual(self) -> float:
        """Largest |Im A_ij|; 0 for a real symmetric matrix."""
        return float(np.max(np.abs(self.matrix.imag)))

    @classmethod
    def diagonal(cls, values: typing.Sequence[float]) -> "Observable":
        """Return the diagonal observable with the given eigenvalues."""
        return cls(matrix=np.diag(np.asarray(values, dtype=complex)))

    @classmethod
    def identity(cls, dim: int) -> "Observable":
        """Return the identity operator on a `dim`-dimensional space."""
        return cls(matrix=np.eye(dim, dtype=complex))

    @classmethod
    def pauli_z(cls) -> "Observable":
        """Return σ_z = diag(+1, −1)."""
        return cls.diagonal([1.0, -1.0])

    @classmethod
    def pauli_x(cls) -> "Observable":
        """Return σ_x."""
        return cls(matrix=np.array([[0, 1], [1, 0]], dtype=complex))


class FinalBasis(FrozenModel):
    """A complete orthonormal basis {|f⟩} for the final projective measurement.

    Labels default to ``f1 … fn`` in vector order.
    """

    vectors: tuple[State, ...]
    labels: tuple[str, ...] = ()

    @pydantic.model_validator(mode="before")
    @classmethod
    def _default_labels(cls, data: typing.Any) -> typing.Any:
        if isinstance(data, dict) and not data.get("labels"):
            data = {**data, "labels": tuple(f"f{i + 1}" for i in range(len(data.get("vectors", ()))))}
        return data

    @pydantic.model_validator(mode="after")
    def _check_complete_orthonormal(self, info: pydantic.ValidationInfo) -> typing.Self:
        if not self.vectors:
            raise ValueError("basis must contain at least one vector")
        dim = self.vectors[0].dim
        if any(v.dim != dim for v in self.vectors):
            raise ValueError("basis vectors must all have the same dimension")
        if len(self.vectors) != dim:
            raise ValueError(f"basis has {len(self.vectors)} vectors, a complete basis needs {dim}")
        if len(self.labels) != len(self.vectors):
            raise ValueError(f"got {len(self.labels)} labels for {len(self.vectors)} vectors")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be unique")
        tol = context_tolerances(info).orthonormal
        residual = orthonormality_residual(np.column_stack([v.amplitudes for v in self.vectors]))
        if residual > tol:
            raise ValueError(f"basis is not orthonormal: residual {residual:.3e} exceeds {tol:.0e}")
        return self

    @property
    def dim(self) -> int:
        """Dimension of the Hilbert space."""
        return self.vectors[0].dim

    @property
    def matrix(self) -> np.ndarray:
        """Basis vectors as the columns of a unitary matrix."""
        matrix = np.column_stack([v.amplitudes for v in self.vectors])
        matrix.setflags(write=False)
        return matrix

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, labels: typing.Sequence[str] | None = None) -> "FinalBasis":
        """Build a basis from the columns of `matrix`."""
        vectors = tuple(State(amplitudes=matrix[:, k]) for k in range(matrix.shape[1]))
        return cls(vectors=vectors, labels=tuple(labels or ()))

    @classmethod
    def computational(cls, dim: int) -> "FinalBasis":
        """Return the computational basis {|0⟩, …, |dim−1⟩}."""
        return cls.from_matrix(np.eye(dim, dtype=complex))


def orthonormality_residual(columns: np.ndarray) -> float:
    """Return max |⟨v_i|v_j⟩ − δ_ij| over the columns of `columns`."""
    gram = columns.conj().T @ columns
    return float(np.max(np.abs(gram - np.eye(columns.shape[1]))))
