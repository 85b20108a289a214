"""Tests for weak values, Fisher information and final-measurement strategies."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakmeas import FinalBasis, MeasurementModel, Observable, State, analysis, exceptions, measurement
from weakmeas.models import Coupling

BINARY = MeasurementModel.binary()
ASYMMETRIC = MeasurementModel(
    outcomes=("a", "b"), weights=[0.25, 0.75], correlations=[np.sqrt(3.0), -1 / np.sqrt(3.0)]
)
PSI_A = State(amplitudes=np.array([1.0, 1.0]) / np.sqrt(2.0))


def random_instance(seed: int, dim: int, real: bool = False) -> tuple[Observable, State, FinalBasis]:
    """Random Hermitian A with ‖A‖₂ = 1, state and basis; real coefficients on request."""
    rng = np.random.default_rng(seed)

    def draw(*shape: int) -> np.ndarray:
        if real:
            return rng.normal(size=shape)
        return rng.normal(size=shape) + 1j * rng.normal(size=shape)

    m = draw(dim, dim)
    a = (m + m.conj().T) / 2
    a /= np.linalg.norm(a, ord=2)
    v = draw(dim)
    q, _ = np.linalg.qr(draw(dim, dim))
    return Observable(matrix=a), State(amplitudes=v / np.linalg.norm(v)), FinalBasis.from_matrix(q)


def expected_square(observable: Observable, state: State) -> float:
    return float(np.linalg.norm(observable.matrix @ state.amplitudes) ** 2)


# --- weak values ---


def test_anomalous_weak_values(sigma_z, psi_a, basis_f):
    table = analysis.weak_value_table(sigma_z, psi_a, basis_f)
    assert table.labels == ("f1", "f2")
    assert table.weak_values[0] == pytest.approx(3.0, abs=1e-12)
    assert table.weak_values[1] == pytest.approx(-1 / 3, abs=1e-12)
    np.testing.assert_allclose(table.post_probs, [0.1, 0.9], atol=1e-12)
    assert table.max_abs_weak_value == pytest.approx(3.0, abs=1e-12)


def test_single_weak_value(sigma_z, psi_a, basis_f):
    assert analysis.weak_value(sigma_z, psi_a, basis_f.vectors[0]) == pytest.approx(3.0, abs=1e-12)


def test_imaginary_weak_values(sigma_z, psi_a, imaginary_basis):
    table = analysis.weak_value_table(sigma_z, psi_a, imaginary_basis)
    assert table.weak_values[0] == pytest.approx(1j, abs=1e-12)
    assert table.weak_values[1] == pytest.approx(-1j, abs=1e-12)


def test_weak_value_undefined_for_orthogonal_post_selection(sigma_z):
    with pytest.raises(exceptions.UndefinedWeakValueError) as excinfo:
        analysis.weak_value(sigma_z, State.basis_state(0, 2), State.basis_state(1, 2))
    assert excinfo.value.code == "UndefinedWeakValue"


def test_table_flags_undefined_entries(computational):
    table = analysis.weak_value_table(Observable.pauli_x(), State.basis_state(0, 2), computational)
    first, second = table.records
    assert first.defined
    assert first.weak_value == pytest.approx(0.0, abs=1e-15)
    assert not second.defined
    assert second.weak_value is None
    assert second.transition == pytest.approx(1.0)
    assert table.weak_values == [first.weak_value, None]


def test_weak_value_dimension_mismatch(sigma_z, psi_a):
    with pytest.raises(exceptions.DimMismatchError):
        analysis.weak_value(sigma_z, psi_a, State.basis_state(0, 3))


@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 8))
@settings(max_examples=50, deadline=None)
def test_eigenbasis_weak_values_are_eigenvalues(seed, dim):
    observable, state, _ = random_instance(seed, dim)
    eigenvalues = np.linalg.eigvalsh(observable.matrix)
    table = analysis.weak_value_table(observable, state, analysis.eigenbasis_strategy(observable))
    weak_values = np.array(table.weak_values, dtype=complex)
    np.testing.assert_allclose(weak_values, eigenvalues, atol=1e-8)


@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 8))
@settings(max_examples=50, deadline=None)
def test_weak_values_average_to_expectation(seed, dim):
    observable, state, basis = random_instance(seed, dim)
    table = analysis.weak_value_table(observable, state, basis)
    mean = sum(r.post_prob * r.weak_value for r in table.records)
    expectation = complex(np.vdot(state.amplitudes, observable.matrix @ state.amplitudes))
    assert abs(mean - expectation) <= 1e-10


# --- fisher_information ---


@pytest.mark.parametrize(
    ("basis_name", "expected"),
    [
        ("computational", (2.0, 2.0)),
        ("basis_f", (3.6, 0.4)),
        ("imaginary_basis", (0.0, 0.0)),
    ],
)
def test_fisher_contributions(request, binary_model, sigma_z, psi_a, basis_name, expected):
    basis = request.getfixturevalue(basis_name)
    report = analysis.fisher_information(binary_model, sigma_z, psi_a, basis)
    np.testing.assert_allclose(report.contributions, expected, atol=1e-12)
    assert report.total == pytest.approx(sum(expected), abs=1e-12)
    assert report.labels == basis.labels


def test_anomalous_basis_reaches_the_bound(binary_model, sigma_z, psi_a, basis_f):
    report = analysis.fisher_information(binary_model, sigma_z, psi_a, basis_f)
    assert report.total == pytest.approx(4.0, abs=1e-12)
    assert report.delta_eps == pytest.approx(0.5, abs=1e-12)
    assert report.basis_is_real
    assert report.max_abs_weak_value == pytest.approx(3.0, abs=1e-12)


def test_imaginary_basis_has_no_information(binary_model, sigma_z, psi_a, imaginary_basis):
    report = analysis.fisher_information(binary_model, sigma_z, psi_a, imaginary_basis)
    assert report.total == pytest.approx(0.0, abs=1e-15)
    assert report.delta_eps is None
    assert not report.basis_is_real
    assert analysis.fisher_phase(sigma_z, psi_a, imaginary_basis) == pytest.approx(4.0, abs=1e-12)


def test_orthogonal_outcome_contributes_its_limit(binary_model, computational):
    # ψ = |0⟩ and f = |1⟩ are orthogonal; p(m, |1⟩) is of order ε² with ⟨1|σ_x|0⟩ = 1.
    report = analysis.fisher_information(binary_model, Observable.pauli_x(), State.basis_state(0, 2), computational)
    np.testing.assert_allclose(report.contributions, [0.0, 4.0], atol=1e-15)
    assert report.total == pytest.approx(4.0)
    assert analysis.fisher_phase(Observable.pauli_x(), State.basis_state(0, 2), computational) == 0.0


def test_phase_information_leaves_out_orthogonal_outcomes(computational):
    # The imaginary-coupling information of the orthogonal outcome also tends to 4·|⟨1|σ_x|0⟩|² = 4.
    observable, state = Observable.pauli_x(), State.basis_state(0, 2)
    eps, delta = 1e-3, 1e-6

    def probabilities(e: float) -> np.ndarray:
        return measurement.joint_prob_exact(
            BINARY, observable, state, computational, e, coupling=Coupling.IMAGINARY
        ).probabilities

    p = probabilities(eps)
    derivative = (probabilities(eps + delta) - probabilities(eps - delta)) / (2 * delta)
    orthogonal = float(np.sum(derivative[:, 1] ** 2 / p[:, 1]))
    assert orthogonal == pytest.approx(4.0, rel=1e-4)
    assert analysis.fisher_phase(observable, state, computational) == 0.0
    real_part = analysis.fisher_information(BINARY, observable, state, computational).total
    assert real_part == pytest.approx(analysis.max_sensitivity(observable, state))


def test_fisher_rejects_invalid_model(sigma_z, psi_a, basis_f):
    biased = MeasurementModel(outcomes=("a", "b"), weights=[0.5, 0.5], correlations=[1.0, 1.0])
    with pytest.raises(exceptions.InvalidModelError) as excinfo:
        analysis.fisher_information(biased, sigma_z, psi_a, basis_f)
    assert excinfo.value.failures == ["unbiased"]


@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 8))
@settings(max_examples=50, deadline=None)
def test_fisher_is_model_independent(seed, dim):
    observable, state, basis = random_instance(seed, dim)
    binary = analysis.fisher_information(BINARY, observable, state, basis)
    asymmetric = analysis.fisher_information(ASYMMETRIC, observable, state, basis)
    np.testing.assert_allclose(binary.contributions, asymmetric.contributions, rtol=0, atol=1e-12)
    assert abs(binary.total - asymmetric.total) <= 1e-12


@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 8))
@settings(max_examples=50, deadline=None)
def test_fisher_is_bounded(seed, dim):
    observable, state, basis = random_instance(seed, dim)
    report = analysis.fisher_information(BINARY, observable, state, basis)
    assert all(c >= 0 for c in report.contributions)
    assert report.total <= 4.0 * expected_square(observable, state) + 1e-10


@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 8))
@settings(max_examples=50, deadline=None)
def test_real_and_phase_information_add_up(seed, dim):
    observable, state, basis = random_instance(seed, dim)
    real_part = analysis.fisher_information(BINARY, observable, state, basis).total
    phase_part = analysis.fisher_phase(observable, state, basis)
    bound = analysis.max_sensitivity(observable, state)
    assert real_part + phase_part == pytest.approx(bound, rel=1e-9, abs=1e-12)


@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 8))
@settings(max_examples=50, deadline=None)
def test_eigenbasis_reaches_the_bound(seed, dim):
    observable, state, _ = random_instance(seed, dim)
    report = analysis.fisher_information(BINARY, observable, state, analysis.eigenbasis_strategy(observable))
    assert report.total == pytest.approx(analysis.max_sensitivity(observable, state), rel=1e-9)
    assert report.basis_is_real


@pytest.mark.parametrize("coupling", [Coupling.REAL, Coupling.IMAGINARY])
@pytest.mark.parametrize("seed", range(100))
def test_fisher_matches_finite_differences(seed, coupling):
    observable, state, basis = random_instance(seed, 2 + seed % 5)
    delta = 1e-4

    def probabilities(eps: float) -> np.ndarray:
        return measurement.joint_prob_exact(ASYMMETRIC, observable, state, basis, eps, coupling=coupling).probabilities

    p0 = probabilities(0.0)
    derivative = (probabilities(delta) - probabilities(-delta)) / (2 * delta)
    kept = p0 > 1e-8
    numeric = float(np.sum(derivative[kept] ** 2 / p0[kept]))
    if coupling is Coupling.REAL:
        analytic = analysis.fisher_information(ASYMMETRIC, observable, state, basis).total
    else:
        analytic = analysis.fisher_phase(observable, state, basis)
    assert numeric == pytest.approx(analytic, rel=1e-4)


# --- is_real_basis ---


def test_is_real_basis(sigma_z, psi_a, basis_f, imaginary_basis):
    assert analysis.is_real_basis(sigma_z, psi_a, basis_f)
    assert not analysis.is_real_basis(sigma_z, psi_a, imaginary_basis)


def test_is_real_basis_ignores_undefined_entries(computational):
    assert analysis.is_real_basis(Observable.pauli_x(), State.basis_state(0, 2), computational)


def test_is_real_basis_tolerance(sigma_z, psi_a, imaginary_basis):
    # |Im A_w|·√p(f) = 1/√2 on both outcomes.
    assert analysis.is_real_basis(sigma_z, psi_a, imaginary_basis, tol=0.75)
    assert not analysis.is_real_basis(sigma_z, psi_a, imaginary_basis, tol=0.7)


@pytest.mark.parametrize("tol", [0.0, -1e-10])
def test_is_real_basis_rejects_non_positive_tolerance(sigma_z, psi_a, basis_f, tol):
    with pytest.raises(ValueError, match="must be positive"):
        analysis.is_real_basis(sigma_z, psi_a, basis_f, tol=tol)


# --- max_sensitivity ---


def test_max_sensitivity_sigma_z(sigma_z, psi_a, psi_b):
    assert analysis.max_sensitivity(sigma_z, psi_a) == pytest.approx(4.0)
    assert analysis.max_sensitivity(sigma_z, psi_b) == pytest.approx(4.0)


def test_max_sensitivity_scales_with_second_moment(psi_a):
    assert analysis.max_sensitivity(Observable.diagonal([2.0, 0.0]), psi_a) == pytest.approx(8.0)


def test_max_sensitivity_dimension_mismatch(sigma_z):
    with pytest.raises(exceptions.DimMismatchError):
        analysis.max_sensitivity(sigma_z, State.basis_state(0, 3))


# --- strategies ---


def test_eigenbasis_of_sigma_z(binary_model, sigma_z, psi_a):
    basis = analysis.eigenbasis_strategy(sigma_z)
    table = analysis.weak_value_table(sigma_z, psi_a, basis)
    assert table.weak_values == pytest.approx([-1.0, 1.0])
    report = analysis.fisher_information(binary_model, sigma_z, psi_a, basis)
    assert report.total == pytest.approx(4.0)


def test_shunted_basis(binary_model, sigma_z, psi_b):
    basis = analysis.shunted_basis(sigma_z, psi_b)
    table = analysis.weak_value_table(sigma_z, psi_b, basis)
    assert table.weak_values[0] == pytest.approx(2.0, abs=1e-12)
    assert table.weak_values[1] == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(table.post_probs, [0.25, 0.75], atol=1e-12)
    report = analysis.fisher_information(binary_model, sigma_z, psi_b, basis)
    np.testing.assert_allclose(report.contributions, [4.0, 0.0], atol=1e-12)


def test_shunted_basis_needs_nonzero_expectation(sigma_z, psi_a):
    with pytest.raises(exceptions.ShuntUndefinedError, match="⟨ψ|A|ψ⟩"):
        analysis.shunted_basis(sigma_z, psi_a)


def test_shunted_basis_needs_nonzero_image():
    with pytest.raises(exceptions.ShuntUndefinedError, match="vanishes"):
        analysis.shunted_basis(Observable.diagonal([1.0, 0.0]), State.basis_state(1, 2))


@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 8))
@settings(max_examples=50, deadline=None)
def test_shunted_basis_carries_everything_in_one_outcome(seed, dim):
    observable, state, _ = random_instance(seed, dim)
    basis = analysis.shunted_basis(observable, state)
    table = analysis.weak_value_table(observable, state, basis)
    second_moment = expected_square(observable, state)
    mean = float(np.vdot(state.amplitudes, observable.matrix @ state.amplitudes).real)
    assert table.weak_values[0] == pytest.approx(second_moment / mean, rel=1e-8)
    for weak in table.weak_values[1:]:
        assert weak is None or abs(weak) <= 1e-8
    report = analysis.fisher_information(BINARY, observable, state, basis)
    assert report.contributions[0] == pytest.approx(4.0 * second_moment, rel=1e-8)


def test_real_random_basis_is_deterministic(sigma_z, psi_a):
    first = analysis.real_random_basis(sigma_z, psi_a, seed=7)
    second = analysis.real_random_basis(sigma_z, psi_a, seed=7)
    other = analysis.real_random_basis(sigma_z, psi_a, seed=8)
    assert np.array_equal(first.matrix, second.matrix)
    assert not np.array_equal(first.matrix, other.matrix)
    assert np.all(first.matrix.imag == 0)


def test_real_random_basis_rejects_complex_inputs(sigma_z):
    complex_state = State(amplitudes=np.array([1.0, 1j]) / np.sqrt(2.0))
    with pytest.raises(exceptions.NotRealRepresentableError):
        analysis.real_random_basis(sigma_z, complex_state, seed=0)
    with pytest.raises(exceptions.NotRealRepresentableError):
        analysis.real_random_basis(Observable(matrix=[[0, -1j], [1j, 0]]), PSI_A, seed=0)


def test_real_random_basis_tolerates_rounding_noise(sigma_z):
    noisy_state = State(amplitudes=np.array([1.0, 1.0 + 1e-14j]) / np.sqrt(2.0))
    noisy_observable = Observable(matrix=[[1.0, 1e-14j], [-1e-14j, -1.0]])
    assert noisy_state.imag_residual > 0
    assert noisy_observable.imag_residual == pytest.approx(1e-14)
    basis = analysis.real_random_basis(noisy_observable, noisy_state, seed=0)
    assert np.all(basis.matrix.imag == 0)
    with pytest.raises(exceptions.NotRealRepresentableError, match="imaginary parts up to"):
        analysis.real_random_basis(sigma_z, State(amplitudes=np.array([1.0, 1.0 + 1e-9j]) / np.sqrt(2.0)), seed=0)


@pytest.mark.parametrize("dim", [2, 3, 5, 8])
def test_real_random_bases_reach_the_bound(dim):
    for seed in range(200):
        observable, state, _ = random_instance(seed, dim, real=True)
        basis = analysis.real_random_basis(observable, state, seed=seed)
        report = analysis.fisher_information(BINARY, observable, state, basis)
        assert report.basis_is_real
        assert abs(report.total - analysis.max_sensitivity(observable, state)) <= 1e-9


# --- qubit scan ---


def test_qubit_rotation_basis_at_zero(computational):
    assert np.array_equal(analysis.qubit_rotation_basis(0.0).matrix, computational.matrix)


def test_scan_keeps_fisher_constant(binary_model, sigma_z, psi_a):
    thetas = np.linspace(0.0, np.pi / 2, 50, endpoint=False)
    rows = analysis.scan_rotations(binary_model, sigma_z, psi_a, thetas)
    assert len(rows) == 50
    for row in rows:
        assert abs(row.fisher_total - 4.0) <= 1e-9
    assert max(row.max_abs_weak_value for row in rows) > 10.0


def test_scan_flags_orthogonal_angle(binary_model, sigma_z, psi_a):
    rows = analysis.scan_rotations(binary_model, sigma_z, psi_a, [np.pi / 4])
    (row,) = rows
    assert row.undefined == ("f2",)
    assert row.post_prob_first == pytest.approx(1.0)
    assert row.fisher_total == pytest.approx(4.0, abs=1e-9)
