import logging
import os
import pathlib

import numpy as np
import pytest
import structlog

from weakmeas import FinalBasis, MeasurementModel, Observable, State

SQRT2 = np.sqrt(2.0)
SQRT5 = np.sqrt(5.0)


def pytest_load_initial_conftests(early_config, parser, args):
    """Conditionally append coverage report to GITHUB_STEP_SUMMARY.

    Only applies when running in GitHub Actions.
    """
    summary_file = os.getenv("GITHUB_STEP_SUMMARY")
    if (
        os.getenv("GITHUB_ACTIONS") == "true"
        and summary_file
        and not any(arg.startswith("--cov-report=markdown-append:") for arg in args)
    ):
        args.append(f"--cov-report=markdown-append:{summary_file}")


def pytest_addoption(parser):
    parser.addoption(
        "--update-goldens",
        action="store_true",
        default=False,
        help="Rewrite the stored CLI reports under tests/unit_tests/data/golden",
    )


@pytest.fixture
def binary_model() -> MeasurementModel:
    """Two-outcome pointer: w = ½, κ = ±1."""
    return MeasurementModel.binary()


@pytest.fixture
def asymmetric_model() -> MeasurementModel:
    """Valid pointer with w = (¼, ¾), κ = (√3, −1/√3)."""
    return MeasurementModel(outcomes=("a", "b"), weights=[0.25, 0.75], correlations=[np.sqrt(3.0), -1 / np.sqrt(3.0)])


@pytest.fixture
def sigma_z() -> Observable:
    return Observable.pauli_z()


@pytest.fixture
def psi_a() -> State:
    """(|0⟩ + |1⟩)/√2."""
    return State(amplitudes=np.array([1.0, 1.0]) / SQRT2)


@pytest.fixture
def psi_b() -> State:
    """(√3|0⟩ + |1⟩)/2, with ⟨σ_z⟩ = ½."""
    return State(amplitudes=np.array([np.sqrt(3.0), 1.0]) / 2.0)


@pytest.fixture
def basis_f() -> FinalBasis:
    """f₁ = (2|0⟩ − |1⟩)/√5, f₂ = (|0⟩ + 2|1⟩)/√5; weak values 3 and −1/3 for ψ_A."""
    return FinalBasis.from_matrix(np.array([[2.0, 1.0], [-1.0, 2.0]]) / SQRT5)


@pytest.fixture
def computational() -> FinalBasis:
    return FinalBasis.computational(2)


@pytest.fixture
def imaginary_basis() -> FinalBasis:
    """(|0⟩ ± i|1⟩)/√2; weak values ±i for ψ_A."""
    return FinalBasis.from_matrix(np.array([[1.0, 1.0], [1j, -1j]]) / SQRT2)


@pytest.fixture
def isolated_cli(tmp_path, monkeypatch):
    """Point the CLI config at an empty directory and reset its module state.

    Logging is reset to the library default afterwards: a command binds it to the stderr of its test.
    """
    from weakmeas.cli import common, config

    monkeypatch.setattr(config.platformdirs, "user_config_dir", lambda *args, **kwargs: str(tmp_path / "config"))
    monkeypatch.setattr(config, "_settings", None)
    monkeypatch.setattr(common, "_output_format", None)
    monkeypatch.setattr(common, "_LOGGING_INITIALIZED", False)
    monkeypatch.setattr(common, "logger", common.logger)
    yield tmp_path / "config"
    structlog.reset_defaults()
    structlog.configure(wrapper_class=structlog.make_filtering_bound_logger(logging.WARNING))


class Golden:
    """Stored CLI output compared byte for byte.

    A missing file is written from the current output and the test is skipped; so is every file
    when pytest runs with ``--update-goldens``.
    """

    def __init__(self, directory: pathlib.Path, update: bool):
        self.directory = directory
        self.update = update

    def check(self, name: str, text: str) -> None:
        path = self.directory / name
        if self.update or not path.exists():
            path.write_text(text, encoding="utf-8")
            pytest.skip(f"wrote golden {name}")
        assert text == path.read_text(encoding="utf-8")


@pytest.fixture
def golden(request) -> Golden:
    directory = pathlib.Path(__file__).parent / "unit_tests" / "data" / "golden"
    return Golden(directory, request.config.getoption("update_goldens"))
