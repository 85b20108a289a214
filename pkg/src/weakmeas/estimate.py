"""Monte Carlo check that the Cramér–Rao bound on ε is attained.

Outcomes are drawn from the exact joint distribution at a true coupling, ε is re-estimated by
maximum likelihood (and by the one-step score estimator), and the spread of the estimates is
compared with the predicted standard error 1/√(n·F).

How to use the most important parts:
- `sample_outcomes(...)`: Reproducible counts for a seed (PCG64 stream, inverse-CDF sampling over
  the model-outcome × basis-vector grid in that order).
- `mle_epsilon(counts, ...)`: Golden-section search over the weak-regime interval, polished by Newton steps.
- `score_estimate(counts, ...)`: Σ counts·score / (n·F), first-order unbiased.
- `run_trials(...)`: Repeat over consecutive seeds and summarize mean, std and bias.
"""

import concurrent.futures
import dataclasses
import math
import typing

import numpy as np
import structlog

from weakmeas import analysis, consts, exceptions, hilbert, measurement
from weakmeas.models import (
    DEFAULT_TOLERANCES,
    EstimationResult,
    FinalBasis,
    MeasurementModel,
    Observable,
    SampleCounts,
    State,
    Tolerances,
    TrialSummary,
)

logger = structlog.get_logger(__name__)

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def sample_outcomes(
    model: MeasurementModel,
    observable: Observable,
    state: State,
    basis: FinalBasis,
    epsilon_true: float,
    n: int,
    seed: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> SampleCounts:
    """Draw `n` independent (m, f) outcomes from the exact distribution at `epsilon_true`."""
    if n < 1:
        raise ValueError("samples must be ≥ 1")
    distribution = measurement.joint_prob_exact(model, observable, state, basis, epsilon_true, tolerances=tolerances)
    flat = distribution.probabilities.ravel()
    cdf = np.cumsum(flat)
    rng = np.random.default_rng(seed)
    draws = np.searchsorted(cdf, rng.random(n) * cdf[-1], side="right")
    cells = np.bincount(np.minimum(draws, flat.size - 1), minlength=flat.size)
    logger.debug("Sampled outcomes", n=n, seed=seed, epsilon_true=epsilon_true)
    return SampleCounts(
        outcomes=model.outcomes,
        labels=basis.labels,
        counts=cells.reshape(distribution.probabilities.shape),
        n_total=n,
        seed=seed,
        epsilon_true=epsilon_true,
    )


@dataclasses.dataclass(frozen=True)
class _Likelihood:
    """Log-likelihood of ε for fixed counts under the exact model.

    Each cell has unnormalized probability q(ε) = a0 + a1·ε + a2·ε² and every cell shares the
    normalization N(ε) = 1 + ε²⟨A²⟩.
    """

    counts: np.ndarray
    a0: np.ndarray
    a1: np.ndarray
    a2: np.ndarray
    a_squared: float
    n_total: int

    @classmethod
    def build(
        cls, counts: SampleCounts, model: MeasurementModel, observable: Observable, state: State, basis: FinalBasis
    ) -> "_Likelihood":
        overlaps, transitions = hilbert.transition_amplitudes(observable, state, basis)
        w = model.weights[:, None]
        kappa = model.correlations[:, None]
        mask = counts.counts.ravel() > 0
        return cls(
            counts=counts.counts.ravel()[mask].astype(float),
            a0=np.broadcast_to(w * np.abs(overlaps) ** 2, counts.counts.shape).ravel()[mask],
            a1=(2.0 * w * kappa * (overlaps.conj() * transitions).real).ravel()[mask],
            a2=(w * kappa**2 * np.abs(transitions) ** 2).ravel()[mask],
            a_squared=float(np.linalg.norm(observable.matrix @ state.amplitudes) ** 2),
            n_total=counts.n_total,
        )

    def _q(self, eps: float) -> np.ndarray:
        return self.a0 + eps * (self.a1 + eps * self.a2)

    def value(self, eps: float) -> float:
        q = self._q(eps)
        if np.any(q <= 0):
            return -math.inf
        return float(np.dot(self.counts, np.log(q)) - self.n_total * math.log1p(eps**2 * self.a_squared))

    def score(self, eps: float) -> float:
        dq = (self.a1 + 2.0 * eps * self.a2) / self._q(eps)
        norm = 1.0 + eps**2 * self.a_squared
        return float(np.dot(self.counts, dq) - self.n_total * 2.0 * eps * self.a_squared / norm)

    def curvature(self, eps: float) -> float:
        q = self._q(eps)
        dq = (self.a1 + 2.0 * eps * self.a2) / q
        norm = 1.0 + eps**2 * self.a_squared
        d2_norm = 2.0 * self.a_squared * (1.0 - eps**2 * self.a_squared) / norm**2
        return float(np.dot(self.counts, 2.0 * self.a2 / q - dq**2) - self.n_total * d2_norm)


def search_limit(model: MeasurementModel, observable: Observable, tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Half-width ε_max = limit/(max|κ|·‖A‖₂) of the interval the estimators search."""
    return tolerances.weak_regime / (model.max_abs_correlation * observable.spectral_norm)


def mle_epsilon(
    counts: SampleCounts,
    model: MeasurementModel,
    observable: Observable,
    state: State,
    basis: FinalBasis,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> EstimationResult:
    """Maximum-likelihood estimate of ε from `counts`.

    Golden-section search over [−ε_max, ε_max], then bounded Newton steps on the exact log-likelihood
    for as long as they shrink |score|. The result is flagged ``converged=False`` if the search
    exhausts its iteration budget or the final score exceeds 1e-8·n.
    """
    _check_grid(counts, model, basis)
    likelihood = _Likelihood.build(counts, model, observable, state, basis)
    limit = search_limit(model, observable, tolerances)

    lo, hi = -limit, limit
    x1 = hi - _INV_GOLDEN * (hi - lo)
    x2 = lo + _INV_GOLDEN * (hi - lo)
    f1, f2 = likelihood.value(x1), likelihood.value(x2)
    width = consts.MLE_INTERVAL_TOL * max(1.0, limit)
    iterations = 0
    while hi - lo > width and iterations < consts.MLE_MAX_ITERATIONS:
        iterations += 1
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_GOLDEN * (hi - lo)
            f1 = likelihood.value(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_GOLDEN * (hi - lo)
            f2 = likelihood.value(x2)
    searched = iterations < consts.MLE_MAX_ITERATIONS

    estimate = 0.5 * (lo + hi)
    best = likelihood.value(estimate)
    score = likelihood.score(estimate) if math.isfinite(best) else math.nan
    score_tol = consts.MLE_SCORE_TOL * counts.n_total
    # Near the optimum the log-likelihood is flat below float resolution: steps are judged by |score|.
    for _ in range(consts.MLE_NEWTON_STEPS):
        if not math.isfinite(score) or abs(score) <= score_tol:
            break
        curvature = likelihood.curvature(estimate)
        if curvature >= 0:
            break
        step = min(max(estimate - score / curvature, -limit), limit)
        refined = likelihood.value(step)
        if not math.isfinite(refined):
            break
        step_score = likelihood.score(step)
        if abs(step_score) >= abs(score):
            break
        estimate, best, score = step, refined, step_score

    converged = searched and abs(score) <= score_tol
    if not converged:
        logger.warning("MLE did not converge", iterations=iterations, score=score, estimate=estimate)

    fisher = analysis.fisher_information(model, observable, state, basis, tolerances).total
    return EstimationResult(
        epsilon_hat=estimate,
        stderr_predicted=1.0 / math.sqrt(counts.n_total * fisher) if fisher > tolerances.zero_information else None,
        log_likelihood=best,
        iterations=iterations,
        converged=converged,
        score=score,
    )


def score_estimate(
    counts: SampleCounts,
    model: MeasurementModel,
    observable: Observable,
    state: State,
    basis: FinalBasis,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """One-step score estimator (1/(n·F))·Σ counts(m, f)·s(m, f).

    Raises:
        ZeroInformationError: If the Fisher information does not exceed the zero-information threshold.
    """
    _check_grid(counts, model, basis)
    fisher = analysis.fisher_information(model, observable, state, basis, tolerances).total
    if fisher <= tolerances.zero_information:
        raise exceptions.ZeroInformationError(f"Fisher information {fisher:.3e} is zero for this basis")
    scores = measurement.score_matrix(model, observable, state, basis, tolerances)
    return float(np.sum(counts.counts * scores) / (counts.n_total * fisher))


def empirical_pointer_shifts(counts: SampleCounts, model: MeasurementModel) -> np.ndarray:
    """Mean κ_m among the samples post-selected on each f (0 where f was never seen)."""
    return measurement.conditional_mean(model.correlations, counts.counts.astype(float))


def _check_grid(counts: SampleCounts, model: MeasurementModel, basis: FinalBasis) -> None:
    if counts.outcomes != model.outcomes or counts.labels != basis.labels:
        raise exceptions.DimMismatchError(
            model.n_outcomes * basis.dim, counts.counts.size, what="counts grid (model outcomes × basis labels)"
        )


def run_trials(
    model: MeasurementModel,
    observable: Observable,
    state: State,
    basis: FinalBasis,
    epsilon_true: float,
    n: int,
    seeds: typing.Sequence[int],
    workers: int = 1,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> TrialSummary:
    """Sample and estimate once per seed; summarize the spread of the MLE.

    Seeds may run on a thread pool; results are reduced in seed order.
    """
    fisher = analysis.fisher_information(model, observable, state, basis, tolerances).total
    informative = fisher > tolerances.zero_information

    def trial(seed: int) -> tuple[EstimationResult, float | None]:
        counts = sample_outcomes(model, observable, state, basis, epsilon_true, n, seed, tolerances)
        result = mle_epsilon(counts, model, observable, state, basis, tolerances)
        linear = score_estimate(counts, model, observable, state, basis, tolerances) if informative else None
        return result, linear

    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(trial, seeds))
    else:
        outcomes = [trial(seed) for seed in seeds]

    estimates = np.array([r.epsilon_hat for r, _ in outcomes])
    mean = float(estimates.mean())
    std = float(estimates.std(ddof=1)) if estimates.size > 1 else 0.0
    predicted = 1.0 / math.sqrt(n * fisher) if informative else None
    summary = TrialSummary(
        epsilon_true=epsilon_true,
        n=n,
        seeds=tuple(int(s) for s in seeds),
        estimates=tuple(float(e) for e in estimates),
        score_estimates=tuple(float(s) for _, s in outcomes if s is not None),
        mean=mean,
        std=std,
        bias=mean - epsilon_true,
        stderr_predicted=predicted,
        ratio=std / predicted if predicted else None,
        converged=sum(1 for r, _ in outcomes if r.converged),
    )
    logger.info("Trials finished", trials=len(seeds), mean=mean, std=std, predicted=predicted)
    return summary
