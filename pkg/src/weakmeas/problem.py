"""High-level interface to a weak-measurement problem.

How to use the most important parts:
- `WeakMeasurementProblem`: Bundles the pointer model, observable, initial state, final basis and
  tolerances. Build it directly or from a parsed problem file with `from_spec`.
- Analysis: `problem.weak_values()`, `problem.fisher()`, `problem.fisher_phase()`,
  `problem.max_sensitivity()`.
- Estimation: `problem.simulate(epsilon, n, seed)` samples and estimates in one call;
  `problem.trials(...)` repeats it over consecutive seeds.
"""

import typing

import numpy as np
import structlog

from weakmeas import analysis, estimate, hilbert, measurement
from weakmeas.models import (
    DEFAULT_TOLERANCES,
    EstimationResult,
    FinalBasis,
    FisherReport,
    JointDistribution,
    MeasurementModel,
    Observable,
    SampleCounts,
    State,
    Tolerances,
    TrialSummary,
    WeakValueTable,
)
from weakmeas.models.problem import BasisChoice, ExplicitBasis, ProblemSpec, RealRandomChoice
from weakmeas.models.report import ScanRow, SimulationSummary

__all__ = ["WeakMeasurementProblem", "resolve_basis"]

logger = structlog.get_logger(__name__)


def resolve_basis(
    choice: BasisChoice, observable: Observable, state: State, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> FinalBasis:
    """Turn a basis choice from a problem file into a `FinalBasis`.

    Raises:
        ShuntUndefinedError: For ``"shunted"`` when ⟨A⟩ or A|ψ⟩ vanishes.
        NotRealRepresentableError: For ``real-random`` with complex inputs.
    """
    if choice == "eigen":
        return analysis.eigenbasis_strategy(observable)
    if choice == "shunted":
        return analysis.shunted_basis(observable, state, tolerances)
    if isinstance(choice, RealRandomChoice):
        return analysis.real_random_basis(observable, state, choice.seed, tolerances)
    if isinstance(choice, ExplicitBasis):
        return choice.to_basis(tolerances)
    raise ValueError(f"Unknown basis choice: {choice!r}")


class WeakMeasurementProblem:
    """A weak measurement of ε followed by a projective measurement in a fixed basis.

    Usage Example:
    ```python
        >>> from weakmeas import Observable, State, WeakMeasurementProblem
        >>> import numpy as np
        >>> psi = State(amplitudes=np.array([np.sqrt(0.5), np.sqrt(0.5)]))
        >>> problem = WeakMeasurementProblem(Observable.pauli_z(), psi)
        >>> round(problem.fisher().total, 9)
        4.0
    ```
    """

    def __init__(
        self,
        observable: Observable,
        state: State,
        basis: FinalBasis | None = None,
        model: MeasurementModel | None = None,
        tolerances: Tolerances = DEFAULT_TOLERANCES,
    ) -> None:
        """Initializes the problem.

        Args:
            observable: The observable A the pointer couples to.
            state: The initial state |ψ⟩.
            basis: Final measurement basis. Defaults to the eigenbasis of A.
            model: Pointer model. Defaults to the binary pointer (w = ½, κ = ±1).
            tolerances: Numerical tolerances used by every operation.
        """
        hilbert.check_dims(observable.dim, state=state)
        if basis is not None:
            hilbert.check_dims(observable.dim, basis=basis)
        self.observable = observable
        self.state = state
        self.basis = basis if basis is not None else analysis.eigenbasis_strategy(observable)
        self.model = model if model is not None else MeasurementModel.binary()
        self.tolerances = tolerances
        measurement.require_valid(self.model, tolerances)

    @classmethod
    def from_spec(cls, spec: ProblemSpec, tolerances: Tolerances = DEFAULT_TOLERANCES) -> typing.Self:
        """Build the problem described by a parsed problem file."""
        basis = resolve_basis(spec.basis, spec.observable, spec.state, tolerances)
        logger.debug("Resolved basis", choice=str(spec.basis), labels=basis.labels)
        return cls(spec.observable, spec.state, basis=basis, model=spec.measurement_model, tolerances=tolerances)

    def with_basis(self, basis: FinalBasis) -> "WeakMeasurementProblem":
        """Return the same problem measured in another final basis."""
        return WeakMeasurementProblem(self.observable, self.state, basis, self.model, self.tolerances)

    def weak_values(self) -> WeakValueTable:
        """Weak values and post-selection probabilities for every basis vector."""
        return analysis.weak_value_table(self.observable, self.state, self.basis, self.tolerances)

    def is_real_basis(self) -> bool:
        """Whether every defined weak value is real."""
        return analysis.is_real_basis(self.observable, self.state, self.basis, tolerances=self.tolerances)

    def fisher(self) -> FisherReport:
        """Fisher information about ε at ε = 0."""
        return analysis.fisher_information(self.model, self.observable, self.state, self.basis, self.tolerances)

    def fisher_phase(self) -> float:
        """Fisher information for an imaginary coupling."""
        return analysis.fisher_phase(self.observable, self.state, self.basis, self.tolerances)

    def max_sensitivity(self) -> float:
        """The bound 4⟨A²⟩ any final basis can reach."""
        return analysis.max_sensitivity(self.observable, self.state)

    def distribution(self, epsilon: float, exact: bool = True) -> JointDistribution:
        """Joint distribution p(m, f) at `epsilon`, exact or to first order."""
        if exact:
            return measurement.joint_prob_exact(
                self.model, self.observable, self.state, self.basis, epsilon, tolerances=self.tolerances
            )
        return measurement.joint_prob_linear(
            self.model, self.observable, self.state, self.basis, epsilon, self.tolerances
        )

    def sample(self, epsilon_true: float, n: int, seed: int) -> SampleCounts:
        """Draw `n` outcomes at `epsilon_true`."""
        return estimate.sample_outcomes(
            self.model, self.observable, self.state, self.basis, epsilon_true, n, seed, self.tolerances
        )

    def estimate(self, counts: SampleCounts) -> EstimationResult:
        """Maximum-likelihood estimate of ε from `counts`."""
        return estimate.mle_epsilon(counts, self.model, self.observable, self.state, self.basis, self.tolerances)

    def score_estimate(self, counts: SampleCounts) -> float:
        """One-step score estimate of ε from `counts`."""
        return estimate.score_estimate(counts, self.model, self.observable, self.state, self.basis, self.tolerances)

    def simulate(self, epsilon_true: float, n: int, seed: int) -> SimulationSummary:
        """Sample once and run both estimators.

        The score estimate is None when the basis carries no information about ε.
        """
        counts = self.sample(epsilon_true, n, seed)
        informative = self.fisher().total > self.tolerances.zero_information
        return SimulationSummary(
            counts=counts,
            mle=self.estimate(counts),
            score_estimate=self.score_estimate(counts) if informative else None,
            pointer_shifts=tuple(float(s) for s in estimate.empirical_pointer_shifts(counts, self.model)),
        )

    def trials(
        self, epsilon_true: float, n: int, seeds: typing.Sequence[int], workers: int = 1
    ) -> TrialSummary:
        """Repeat `simulate` over `seeds` and summarize the MLE spread."""
        return estimate.run_trials(
            self.model,
            self.observable,
            self.state,
            self.basis,
            epsilon_true,
            n,
            seeds,
            workers=workers,
            tolerances=self.tolerances,
        )

    def scan(self, thetas: typing.Iterable[float] | np.ndarray) -> list[ScanRow]:
        """Qubit basis scan; the problem's own basis is not used."""
        return analysis.scan_rotations(self.model, self.observable, self.state, thetas, self.tolerances)
