"""The `weak-values` command."""

from weakmeas import WeakMeasurementProblem
from weakmeas.cli import common
from weakmeas.models import WeakValueTable

logger = common.logger


def weak_value_rows(table: WeakValueTable) -> list[dict[str, object]]:
    """CSV rows of a weak-value table; undefined weak values are left empty."""
    rows = []
    for record in table.records:
        value = record.weak_value
        rows.append(
            {
                "label": record.label,
                "post_prob": record.post_prob,
                "weak_value_re": value.real if value is not None else "",
                "weak_value_im": value.imag if value is not None else "",
                "defined": record.defined,
            }
        )
    return rows


def weak_values_command(
    file: common.ProblemFile,
    *,
    tolerance: common.ToleranceFlag = None,
    out: common.OutFlag = None,
):
    """Tabulate weak values and post-selection probabilities for the problem's final basis."""
    tolerances = common.resolve_tolerances(tolerance)
    spec, digest = common.load_problem(file, tolerances)
    problem = WeakMeasurementProblem.from_spec(spec, tolerances)

    table = problem.weak_values()
    warnings = tuple(f"weak value undefined for {r.label}: p(f) vanishes" for r in table.records if not r.defined)
    report = common.build_report(
        "weak-values",
        file,
        digest,
        arguments={"tolerance": tolerances.real_basis},
        weak_values=table,
        is_real_basis=problem.is_real_basis(),
        warnings=warnings,
    )
    logger.debug("Weak values computed", labels=table.labels)
    common.write_report(report, weak_value_rows(table), out)
