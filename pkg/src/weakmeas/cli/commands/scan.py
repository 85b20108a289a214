"""The `scan` command."""

import typing

import cyclopts
import numpy as np

from weakmeas import WeakMeasurementProblem
from weakmeas.cli import common, consts
from weakmeas.models import ScanRow

logger = common.logger


def scan_rows(rows: list[ScanRow]) -> list[dict[str, object]]:
    """CSV rows of a basis scan."""
    return [
        {
            "theta": row.theta,
            "max_abs_weak_value": row.max_abs_weak_value,
            "post_prob_first": row.post_prob_first,
            "fisher_total": row.fisher_total,
            "undefined": " ".join(row.undefined),
        }
        for row in rows
    ]


def scan_command(
    file: common.ProblemFile,
    *,
    theta_start: typing.Annotated[
        float, cyclopts.Parameter(name=["--theta-start"], help="First angle (radians)")
    ] = 0.0,
    theta_end: typing.Annotated[
        float, cyclopts.Parameter(name=["--theta-end"], help="End of the sweep (radians, excluded)")
    ] = float(np.pi / 2),
    points: typing.Annotated[
        int, cyclopts.Parameter(name=["--points"], help="Number of angles", validator=cyclopts.validators.Number(gte=1))
    ] = consts.DEFAULT_SCAN_POINTS,
    tolerance: common.ToleranceFlag = None,
    out: common.OutFlag = None,
):
    """Sweep qubit bases (cos θ|0⟩ + sin θ|1⟩, −sin θ|0⟩ + cos θ|1⟩) over a grid of angles.

    The grid is `points` evenly spaced angles starting at `theta_start`, excluding `theta_end`. The
    problem's own basis is ignored. Only qubit problems can be scanned.
    """
    tolerances = common.resolve_tolerances(tolerance)
    spec, digest = common.load_problem(file, tolerances)
    problem = WeakMeasurementProblem.from_spec(spec, tolerances)

    thetas = np.linspace(theta_start, theta_end, points, endpoint=False)
    rows = problem.scan(thetas)
    warnings = tuple(f"weak value undefined at θ = {row.theta!r}" for row in rows if row.undefined)
    report = common.build_report(
        "scan",
        file,
        digest,
        arguments={"theta_start": theta_start, "theta_end": theta_end, "points": points},
        scan=tuple(rows),
        warnings=warnings,
    )
    logger.info("Scan finished", points=points, undefined=len(warnings))
    common.write_report(report, scan_rows(rows), out)
