"""The weak-measurement model: measurement operators, outcome probabilities and scores.

Every pointer outcome m has a measurement operator Ê_m = √w_m·(𝟙 + ε·κ_m·A), where ε is the unknown
coupling. Followed by a projective measurement in a basis {|f⟩}, this gives joint probabilities
p(m, f) whose ε-dependence is set by the real weak values ⟨f|A|ψ⟩/⟨f|ψ⟩.

How to use the most important parts:
- `validate_model(model)`: Check Σw = 1, Σwκ = 0, Σwκ² = 1 and w > 0; returns a report.
- `joint_prob_linear(...)`: First-order probabilities. Entries can go negative for large ε; they are
  flagged in `JointDistribution.warnings`, never clamped.
- `joint_prob_exact(...)`: Born-rule probabilities renormalized by N(ε) = 1 + ε²⟨A²⟩.
- `log_derivative(...)`: The score ∂ ln p(m, f)/∂ε at ε = 0, i.e. 2κ_m·Re[A_w].
"""

import numpy as np
import structlog

from weakmeas import exceptions, hilbert
from weakmeas.models import (
    DEFAULT_TOLERANCES,
    Coupling,
    DistributionMode,
    FinalBasis,
    JointDistribution,
    MeasurementModel,
    ModelCheck,
    ModelValidationReport,
    Observable,
    State,
    Tolerances,
)

logger = structlog.get_logger(__name__)


def validate_model(model: MeasurementModel, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ModelValidationReport:
    """Check the pointer model normalization conditions.

    Failures are reported, not raised. Σ_m w_m κ_m = 0 is required on top of Σ_m w_m κ_m² = 1:
    without it the joint distribution is not normalized at first order in ε.
    """
    w, kappa = model.weights, model.correlations
    tol = tolerances.model_sum
    min_weight = float(np.min(w))
    checks = (
        ModelCheck(name="positive_weights", passed=min_weight > 0, residual=max(0.0, -min_weight), tolerance=0.0),
        _check("weights_normalized", float(np.sum(w)) - 1.0, tol),
        _check("unbiased", float(np.sum(w * kappa)), tol),
        _check("correlations_normalized", float(np.sum(w * kappa**2)) - 1.0, tol),
    )
    report = ModelValidationReport(checks=checks)
    if not report.ok:
        logger.info("Measurement model failed validation", failures=report.failures)
    return report


def _check(name: str, deviation: float, tol: float) -> ModelCheck:
    return ModelCheck(name=name, passed=abs(deviation) <= tol, residual=abs(deviation), tolerance=tol)


def require_valid(model: MeasurementModel, tolerances: Tolerances = DEFAULT_TOLERANCES) -> None:
    """Raise `InvalidModelError` unless `model` passes `validate_model`."""
    report = validate_model(model, tolerances)
    if not report.ok:
        raise exceptions.InvalidModelError(
            f"measurement model fails normalization checks: {', '.join(report.failures)}", report.failures
        )


def _coupling_factor(coupling: Coupling) -> complex:
    return 1j if coupling is Coupling.IMAGINARY else 1.0


def kraus_operator(
    model: MeasurementModel,
    m: str,
    observable: Observable,
    epsilon: float,
    coupling: Coupling = Coupling.REAL,
) -> np.ndarray:
    """Return the measurement operator Ê_m = √w_m·(𝟙 + ε·κ_m·A).

    With ``Coupling.IMAGINARY`` the coupling is the phase iε, giving √w_m·(𝟙 + iε·κ_m·A).

    Raises:
        UnknownOutcomeError: If `m` is not a model outcome.
    """
    i = model.index(m)
    g = _coupling_factor(coupling)
    identity = np.eye(observable.dim, dtype=complex)
    return np.sqrt(model.weights[i]) * (identity + g * epsilon * model.correlations[i] * observable.matrix)


def completeness_residual(
    model: MeasurementModel,
    observable: Observable,
    epsilon: float,
    coupling: Coupling = Coupling.REAL,
) -> float:
    """Return max-entry ‖Σ_m Ê_m†Ê_m − (𝟙 + ε²A²)‖ for the model's operators."""
    total = np.zeros((observable.dim, observable.dim), dtype=complex)
    for m in model.outcomes:
        op = kraus_operator(model, m, observable, epsilon, coupling)
        total += op.conj().T @ op
    a = observable.matrix
    expected = np.eye(observable.dim) + epsilon**2 * (a @ a)
    return float(np.max(np.abs(total - expected)))


def weak_regime_ratio(model: MeasurementModel, observable: Observable, epsilon: float) -> float:
    """Return |ε|·max|κ_m|·‖A‖₂, the size of the first-order correction."""
    return abs(epsilon) * model.max_abs_correlation * observable.spectral_norm


def _weak_regime_warnings(
    model: MeasurementModel, observable: Observable, epsilon: float, tolerances: Tolerances
) -> list[str]:
    ratio = weak_regime_ratio(model, observable, epsilon)
    if ratio <= tolerances.weak_regime:
        return []
    logger.warning("Coupling outside the weak regime", epsilon=epsilon, ratio=ratio, limit=tolerances.weak_regime)
    return [f"weak-regime guard exceeded: |ε|·max|κ|·‖A‖ = {ratio:.6g} > {tolerances.weak_regime:g}"]


def joint_prob_linear(
    model: MeasurementModel,
    observable: Observable,
    state: State,
    basis: FinalBasis,
    epsilon: float,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> JointDistribution:
    """First-order joint probabilities p(m, f) = w_m·p(f)·(1 + 2εκ_m·Re[A_w(f)]).

    Where |⟨f|ψ⟩|² falls below the vanishing-overlap tolerance the weak-value correction is dropped
    and the entry is w_m·p(f): the exact probability there is of order ε².
    """
    overlaps, transitions = hilbert.transition_amplitudes(observable, state, basis)
    post = np.abs(overlaps) ** 2
    defined = post >= tolerances.vanishing_overlap
    real_weak = np.zeros_like(post)
    real_weak[defined] = (transitions[defined] / overlaps[defined]).real

    w = model.weights[:, None]
    kappa = model.correlations[:, None]
    probabilities = w * post[None, :] * (1.0 + 2.0 * epsilon * kappa * real_weak[None, :])

    warnings = _weak_regime_warnings(model, observable, epsilon, tolerances)
    negative = int(np.count_nonzero(probabilities < 0))
    if negative:
        logger.warning("First-order probabilities negative", count=negative, epsilon=epsilon)
        warnings.append(f"{negative} first-order probabilities are negative at ε = {epsilon:g}")

    return JointDistribution(
        outcomes=model.outcomes,
        labels=basis.labels,
        probabilities=probabilities,
        epsilon=epsilon,
        mode=DistributionMode.FIRST_ORDER,
        warnings=tuple(warnings),
    )


def joint_prob_exact(
    model: MeasurementModel,
    observable: Observable,
    state: State,
    basis: FinalBasis,
    epsilon: float,
    coupling: Coupling = Coupling.REAL,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> JointDistribution:
    """Born-rule joint probabilities p(m, f) = |⟨f|Ê_m|ψ⟩|² / N(ε).

    The operators are not trace preserving at order ε²; the total N(ε) = 1 + ε²⟨A²⟩ is divided out.

    Raises:
        InvalidModelError: If the model fails `validate_model`.
        NumericError: If N(ε) deviates from 1 + ε²⟨A²⟩.
    """
    require_valid(model, tolerances)
    overlaps, transitions = hilbert.transition_amplitudes(observable, state, basis)
    g = _coupling_factor(coupling)
    amplitudes = overlaps[None, :] + g * epsilon * model.correlations[:, None] * transitions[None, :]
    unnormalized = model.weights[:, None] * np.abs(amplitudes) ** 2

    norm = float(unnormalized.sum())
    a_squared = float(np.linalg.norm(observable.matrix @ state.amplitudes) ** 2)
    expected = 1.0 + epsilon**2 * a_squared
    if abs(norm - expected) > tolerances.exact_normalization * expected:
        raise exceptions.NumericError(f"normalization N(ε) = {norm!r} differs from 1 + ε²⟨A²⟩ = {expected!r}")

    return JointDistribution(
        outcomes=model.outcomes,
        labels=basis.labels,
        probabilities=unnormalized / norm,
        epsilon=epsilon,
        mode=DistributionMode.EXACT,
        coupling=coupling,
    )


def log_derivative(
    model: MeasurementModel,
    observable: Observable,
    state: State,
    f: State,
    m: str,
    coupling: Coupling = Coupling.REAL,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Return the score ∂ ln p(m, f)/∂ε at ε = 0, which is 2κ_m·Re[A_w].

    For ``Coupling.IMAGINARY`` the score is −2κ_m·Im[A_w].

    Raises:
        UndefinedWeakValueError: If |⟨f|ψ⟩|² is below the vanishing-overlap tolerance.
        UnknownOutcomeError: If `m` is not a model outcome.
    """
    hilbert.check_dims(observable.dim, state=state, f=f)
    kappa = float(model.correlations[model.index(m)])
    overlap = hilbert.inner(f, state)
    if abs(overlap) ** 2 < tolerances.vanishing_overlap:
        raise exceptions.UndefinedWeakValueError(f"post-selection probability |⟨f|ψ⟩|² = {abs(overlap) ** 2:.3e}")
    weak = complex(np.vdot(f.amplitudes, observable.matrix @ state.amplitudes)) / overlap
    if coupling is Coupling.IMAGINARY:
        return -2.0 * kappa * weak.imag
    return 2.0 * kappa * weak.real


def score_matrix(
    model: MeasurementModel,
    observable: Observable,
    state: State,
    basis: FinalBasis,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """Return `log_derivative` for every (m, f) cell; cells with undefined weak values score 0."""
    overlaps, transitions = hilbert.transition_amplitudes(observable, state, basis)
    defined = np.abs(overlaps) ** 2 >= tolerances.vanishing_overlap
    real_weak = np.zeros(basis.dim)
    real_weak[defined] = (transitions[defined] / overlaps[defined]).real
    return 2.0 * model.correlations[:, None] * real_weak[None, :]


def pointer_shifts(model: MeasurementModel, distribution: JointDistribution) -> np.ndarray:
    """Return the mean of κ_m conditioned on each final outcome f.

    For the first-order engine this is 2ε·Re[A_w(f)]: the pointer shift seen after post-selecting f
    is proportional to its real weak value. Outcomes with a vanishing marginal report 0.
    """
    return conditional_mean(model.correlations, distribution.probabilities)


def conditional_mean(correlations: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Σ_m weights[m, f]·κ_m / Σ_m weights[m, f] per column, 0 where the column sums to 0."""
    marginal = weights.sum(axis=0)
    numerator = (correlations[:, None] * weights).sum(axis=0)
    shifts = np.zeros(weights.shape[1])
    nonzero = marginal != 0
    shifts[nonzero] = numerator[nonzero] / marginal[nonzero]
    return shifts
