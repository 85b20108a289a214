"""Weak values, Fisher information and final-measurement strategies.

How to use the most important parts:
- `weak_value_table(A, ψ, basis)`: Weak values A_w = ⟨f|A|ψ⟩/⟨f|ψ⟩ and p(f) for every basis vector.
- `fisher_information(model, A, ψ, basis)`: Fisher information about ε. Every basis with real weak
  values reaches `max_sensitivity(A, ψ)` = 4⟨A²⟩, however large the weak values get.
- `fisher_phase(A, ψ, basis)`: The same for an imaginary (phase) coupling; the two always add up
  to 4⟨A²⟩.
- Strategies: `eigenbasis_strategy`, `shunted_basis` (one outcome carries all the sensitivity),
  `real_random_basis` and `qubit_rotation_basis`.
"""

import typing

import numpy as np
import scipy.stats
import structlog

from weakmeas import exceptions, hilbert, measurement
from weakmeas.models import (
    DEFAULT_TOLERANCES,
    FinalBasis,
    FisherReport,
    MeasurementModel,
    Observable,
    State,
    Tolerances,
    WeakValueRecord,
    WeakValueTable,
)
from weakmeas.models.report import ScanRow

logger = structlog.get_logger(__name__)


def weak_value(
    observable: Observable, state: State, f: State, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> complex:
    """Return the weak value ⟨f|A|ψ⟩/⟨f|ψ⟩.

    The result can lie far outside the eigenvalue range of A.

    Raises:
        DimMismatchError: If the operands do not share one dimension.
        UndefinedWeakValueError: If |⟨f|ψ⟩|² is below the vanishing-overlap tolerance.
    """
    hilbert.check_dims(observable.dim, state=state, f=f)
    overlap = hilbert.inner(f, state)
    if abs(overlap) ** 2 < tolerances.vanishing_overlap:
        raise exceptions.UndefinedWeakValueError(f"post-selection probability |⟨f|ψ⟩|² = {abs(overlap) ** 2:.3e}")
    return complex(np.vdot(f.amplitudes, observable.matrix @ state.amplitudes)) / overlap


def weak_value_table(
    observable: Observable, state: State, basis: FinalBasis, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> WeakValueTable:
    """Tabulate weak values and post-selection probabilities; undefined entries are flagged."""
    overlaps, transitions = hilbert.transition_amplitudes(observable, state, basis)
    records = []
    for label, c, d in zip(basis.labels, overlaps, transitions, strict=True):
        post = float(abs(c) ** 2)
        defined = post >= tolerances.vanishing_overlap
        records.append(
            WeakValueRecord(
                label=label,
                post_prob=post,
                overlap=complex(c),
                transition=complex(d),
                weak_value=complex(d / c) if defined else None,
                defined=defined,
            )
        )
    return WeakValueTable(records=tuple(records))


def _division_free_terms(
    observable: Observable, state: State, basis: FinalBasis, tolerances: Tolerances
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return p(f), ⟨ψ|f⟩⟨f|A|ψ⟩ = p(f)·A_w and the mask of outcomes with vanishing p(f).

    On masked outcomes the product is replaced by |⟨f|A|ψ⟩|², the real ε → 0 limit of its Fisher term.
    """
    overlaps, transitions = hilbert.transition_amplitudes(observable, state, basis)
    post = np.abs(overlaps) ** 2
    product = overlaps.conj() * transitions
    vanishing = post < tolerances.vanishing_overlap
    product[vanishing] = np.abs(transitions[vanishing]) ** 2
    return post, product, vanishing


def fisher_information(
    model: MeasurementModel,
    observable: Observable,
    state: State,
    basis: FinalBasis,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> FisherReport:
    """Fisher information about ε at ε = 0 for the given final basis.

    Each outcome contributes 4·p(f)·Re[A_w]², evaluated as 4·Re[⟨ψ|f⟩⟨f|A|ψ⟩]²/p(f). An outcome
    orthogonal to ψ has p(m, f) = w_m·ε²κ_m²·|⟨f|A|ψ⟩|²/N(ε) and contributes its limit 4·|⟨f|A|ψ⟩|².
    The pointer model only enters through Σ_m w_m κ_m² = 1, so any valid model gives the same report.

    Raises:
        InvalidModelError: If the model fails `validate_model`.
    """
    measurement.require_valid(model, tolerances)
    post, product, vanishing = _division_free_terms(observable, state, basis, tolerances)
    contributions = np.zeros_like(post)
    regular = ~vanishing & (product.real != 0)
    contributions[regular] = 4.0 * product.real[regular] ** 2 / post[regular]
    contributions[vanishing] = 4.0 * product.real[vanishing]
    total = float(contributions.sum())

    table = weak_value_table(observable, state, basis, tolerances)
    report = FisherReport(
        labels=basis.labels,
        contributions=tuple(float(c) for c in contributions),
        total=total,
        delta_eps=total**-0.5 if total > tolerances.zero_information else None,
        basis_is_real=is_real_basis(observable, state, basis, tolerances=tolerances),
        max_abs_weak_value=table.max_abs_weak_value,
    )
    logger.debug("Fisher information", total=total, basis_is_real=report.basis_is_real)
    return report


def fisher_phase(
    observable: Observable, state: State, basis: FinalBasis, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """Fisher information 4·Σ_f p(f)·Im[A_w]² for an imaginary (phase) coupling.

    Outcomes orthogonal to ψ count towards `fisher_information` only, so the two totals add up to
    4⟨A²⟩ for every basis. Their imaginary-coupling Fisher information also tends to 4·|⟨f|A|ψ⟩|² as
    ε → 0; this function leaves it out and equals the finite-difference value only on the other outcomes.
    """
    post, product, vanishing = _division_free_terms(observable, state, basis, tolerances)
    regular = ~vanishing & (product.imag != 0)
    return float(np.sum(4.0 * product.imag[regular] ** 2 / post[regular]))


def is_real_basis(
    observable: Observable,
    state: State,
    basis: FinalBasis,
    tol: float | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> bool:
    """Whether every defined weak value is real.

    The criterion is |Im[A_w]|·√p(f) ≤ `tol`, so outcomes with negligible probability cannot make a
    basis complex. Undefined entries are ignored.
    """
    tol = tolerances.real_basis if tol is None else tol
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    post, product, vanishing = _division_free_terms(observable, state, basis, tolerances)
    scaled = np.abs(product.imag[~vanishing]) / np.sqrt(post[~vanishing])
    return bool(np.all(scaled <= tol))


def max_sensitivity(observable: Observable, state: State) -> float:
    """Return the maximal Fisher information 4⟨ψ|A²|ψ⟩."""
    hilbert.check_dims(observable.dim, state=state)
    return 4.0 * float(np.linalg.norm(observable.matrix @ state.amplitudes) ** 2)


def eigenbasis_strategy(observable: Observable) -> FinalBasis:
    """Final measurement in the eigenbasis of A (ascending eigenvalues); weak values are eigenvalues."""
    _, basis = hilbert.eig_hermitian(observable)
    return basis


def shunted_basis(observable: Observable, state: State, tolerances: Tolerances = DEFAULT_TOLERANCES) -> FinalBasis:
    """Basis in which all weak values but the first vanish.

    The first vector is f₁ = A|ψ⟩/‖A|ψ⟩‖, with A_w(f₁) = ⟨A²⟩/⟨A⟩ and p(f₁) = ⟨A⟩²/⟨A²⟩. The rest are
    orthogonal to A|ψ⟩ and so have weak value 0.

    Raises:
        ShuntUndefinedError: If A|ψ⟩ or ⟨ψ|A|ψ⟩ vanishes.
    """
    hilbert.check_dims(observable.dim, state=state)
    image = observable.matrix @ state.amplitudes
    norm = float(np.linalg.norm(image))
    mean = hilbert.expectation(observable, state).real
    if norm < tolerances.shunt_norm:
        raise exceptions.ShuntUndefinedError(f"A|ψ⟩ vanishes (norm {norm:.3e})")
    if abs(mean) < tolerances.shunt_expectation:
        raise exceptions.ShuntUndefinedError(
            f"⟨ψ|A|ψ⟩ = {mean:.3e}: the carrying outcome would have vanishing probability"
        )
    first = hilbert.normalize(image, tolerances)
    return hilbert.complete_basis([first], observable.dim, tolerances)


def real_random_basis(
    observable: Observable, state: State, seed: int, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> FinalBasis:
    """Seeded random basis with real coefficients; all weak values are real when A and ψ are.

    Raises:
        NotRealRepresentableError: If A or ψ has complex coefficients.
    """
    hilbert.check_dims(observable.dim, state=state)
    imag = max(observable.imag_residual, state.imag_residual)
    if imag > tolerances.real_representable:
        raise exceptions.NotRealRepresentableError(f"inputs have imaginary parts up to {imag:.3e}")
    rng = np.random.default_rng(seed)
    orthogonal = scipy.stats.ortho_group.rvs(observable.dim, random_state=rng)
    return FinalBasis.from_matrix(np.asarray(orthogonal, dtype=complex))


def qubit_rotation_basis(theta: float) -> FinalBasis:
    """Qubit basis {cos θ|0⟩ + sin θ|1⟩, −sin θ|0⟩ + cos θ|1⟩}."""
    c, s = np.cos(theta), np.sin(theta)
    return FinalBasis.from_matrix(np.array([[c, -s], [s, c]], dtype=complex))


def scan_rotations(
    model: MeasurementModel,
    observable: Observable,
    state: State,
    thetas: typing.Iterable[float],
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> list[ScanRow]:
    """Weak values and Fisher information along a family of qubit bases.

    The Fisher column stays at 4⟨A²⟩ for real A and ψ while the weak values diverge as a basis
    vector approaches orthogonality with ψ.
    """
    rows = []
    for theta in thetas:
        basis = qubit_rotation_basis(float(theta))
        table = weak_value_table(observable, state, basis, tolerances)
        report = fisher_information(model, observable, state, basis, tolerances)
        rows.append(
            ScanRow(
                theta=float(theta),
                max_abs_weak_value=table.max_abs_weak_value,
                post_prob_first=table.records[0].post_prob,
                fisher_total=report.total,
                undefined=tuple(r.label for r in table.records if not r.defined),
            )
        )
    return rows
