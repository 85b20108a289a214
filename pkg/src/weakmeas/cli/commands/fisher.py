"""The `fisher` command."""

from weakmeas import WeakMeasurementProblem
from weakmeas.cli import common
from weakmeas.models import FisherReport, SensitivitySummary

logger = common.logger


def fisher_rows(report: FisherReport) -> list[dict[str, object]]:
    """CSV rows: one Fisher contribution per basis vector."""
    return [
        {"label": label, "contribution": contribution}
        for label, contribution in zip(report.labels, report.contributions, strict=True)
    ]


def fisher_command(
    file: common.ProblemFile,
    *,
    tolerance: common.ToleranceFlag = None,
    out: common.OutFlag = None,
):
    """Report the Fisher information about ε and how close it comes to 4⟨A²⟩."""
    tolerances = common.resolve_tolerances(tolerance)
    spec, digest = common.load_problem(file, tolerances)
    problem = WeakMeasurementProblem.from_spec(spec, tolerances)

    fisher = problem.fisher()
    bound = problem.max_sensitivity()
    sensitivity = SensitivitySummary(
        max_sensitivity=bound,
        saturation_ratio=fisher.total / bound if bound > 0 else 0.0,
        fisher_phase=problem.fisher_phase(),
    )
    report = common.build_report(
        "fisher",
        file,
        digest,
        arguments={"tolerance": tolerances.real_basis},
        weak_values=problem.weak_values(),
        is_real_basis=fisher.basis_is_real,
        fisher=fisher,
        sensitivity=sensitivity,
    )
    logger.info("Fisher information", total=fisher.total, bound=bound)
    common.write_report(report, fisher_rows(fisher), out)
