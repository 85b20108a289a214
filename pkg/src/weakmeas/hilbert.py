"""Dense linear algebra on small Hilbert spaces.

How to use the most important parts:
- `inner(a, b)`: ⟨a|b⟩, conjugate-linear in the first argument.
- `normalize(v)`: Turn any non-zero complex vector into a `State`.
- `eig_hermitian(A)`: Ascending eigenvalues and the eigenbasis of an `Observable`.
- `complete_basis(partial, dim)`: Extend orthonormal vectors to a full `FinalBasis`.

States are compared up to a global phase with `same_ray`.
"""

import typing

import numpy as np
import structlog

from weakmeas import exceptions
from weakmeas.models import DEFAULT_TOLERANCES, FinalBasis, Observable, State, Tolerances
from weakmeas.models.hilbert import orthonormality_residual

logger = structlog.get_logger(__name__)


def check_dims(expected: int, **operands: State | Observable | FinalBasis) -> None:
    """Raise `DimMismatchError` unless every operand has dimension `expected`."""
    for name, operand in operands.items():
        if operand.dim != expected:
            raise exceptions.DimMismatchError(expected, operand.dim, what=name)


def inner(a: State, b: State) -> complex:
    """Return ⟨a|b⟩ = Σ_i conj(a_i)·b_i.

    Raises:
        DimMismatchError: If the states have different dimensions.
    """
    check_dims(a.dim, b=b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def normalize(v: typing.Sequence[complex] | np.ndarray, tolerances: Tolerances = DEFAULT_TOLERANCES) -> State:
    """Return the unit-norm `State` parallel to `v`.

    Raises:
        ZeroVectorError: If ‖v‖ does not exceed the zero-vector tolerance.
    """
    vector = np.asarray(v, dtype=complex)
    norm = float(np.linalg.norm(vector))
    if norm <= tolerances.zero_vector:
        raise exceptions.ZeroVectorError(f"cannot normalize a vector of norm {norm:.3e}")
    return State(amplitudes=vector / norm)


def same_ray(a: State, b: State, tolerances: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Whether `a` and `b` differ only by a global phase (|⟨a|b⟩| = 1)."""
    return abs(abs(inner(a, b)) - 1.0) <= tolerances.orthonormal


def expectation(operator: Observable | np.ndarray, state: State) -> complex:
    """Return ⟨ψ|O|ψ⟩."""
    matrix = operator.matrix if isinstance(operator, Observable) else operator
    return complex(np.vdot(state.amplitudes, matrix @ state.amplitudes))


def eig_hermitian(observable: Observable) -> tuple[np.ndarray, FinalBasis]:
    """Diagonalize a Hermitian observable.

    Degenerate eigenspaces come back as some orthonormal spanning set; callers must not rely on
    particular vectors inside them.

    Returns:
        Ascending real eigenvalues and the matching eigenbasis.
    """
    eigenvalues, eigenvectors = np.linalg.eigh(observable.matrix)
    logger.debug("Diagonalized observable", dim=observable.dim, eigenvalues=eigenvalues.tolist())
    return eigenvalues, FinalBasis.from_matrix(eigenvectors)


def complete_basis(
    partial: typing.Sequence[State],
    dim: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> FinalBasis:
    """Extend orthonormal vectors to a complete orthonormal basis.

    The input vectors are kept unchanged and in order. Missing vectors come from Gram–Schmidt over
    the canonical unit vectors |0⟩, |1⟩, … in index order; candidates whose residual norm falls
    below the Gram–Schmidt tolerance are skipped.

    Raises:
        NotOrthonormalError: If `partial` is not orthonormal or has more than `dim` vectors.
        DimMismatchError: If a vector does not have dimension `dim`.
    """
    for i, vector in enumerate(partial):
        check_dims(dim, **{f"partial[{i}]": vector})
    if len(partial) > dim:
        raise exceptions.NotOrthonormalError(f"{len(partial)} vectors cannot be orthonormal in dimension {dim}")

    columns = [v.amplitudes for v in partial]
    if columns:
        residual = orthonormality_residual(np.column_stack(columns))
        if residual > tolerances.orthonormal:
            raise exceptions.NotOrthonormalError(f"input vectors are not orthonormal: residual {residual:.3e}")

    completed = list(partial)
    for k in range(dim):
        if len(completed) == dim:
            break
        candidate = np.zeros(dim, dtype=complex)
        candidate[k] = 1.0
        # Gram–Schmidt, applied twice.
        for _ in range(2):
            for vector in completed:
                candidate = candidate - np.vdot(vector.amplitudes, candidate) * vector.amplitudes
        norm = float(np.linalg.norm(candidate))
        if norm < tolerances.gram_schmidt_residual:
            continue
        completed.append(State(amplitudes=candidate / norm))

    return FinalBasis(vectors=tuple(completed))


def transition_amplitudes(observable: Observable, state: State, basis: FinalBasis) -> tuple[np.ndarray, np.ndarray]:
    """Return the post-selection amplitudes ⟨f|ψ⟩ and ⟨f|A|ψ⟩ for every basis vector.

    Raises:
        DimMismatchError: If the operands do not share one dimension.
    """
    check_dims(observable.dim, state=state, basis=basis)
    adjoint = basis.matrix.conj().T
    return adjoint @ state.amplitudes, adjoint @ (observable.matrix @ state.amplitudes)
