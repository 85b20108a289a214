"""The `simulate` command."""

import sys
import typing

import cyclopts

from weakmeas import WeakMeasurementProblem, exceptions
from weakmeas.cli import common, config, consts
from weakmeas.models import SampleCounts

logger = common.logger


def count_rows(counts: SampleCounts) -> list[dict[str, object]]:
    """CSV rows: one count per (pointer outcome, basis vector) cell."""
    return [{"m": m, "f": f, "count": count} for (m, f), count in counts.entries.items()]


def simulate_command(
    file: common.ProblemFile,
    *,
    trials: typing.Annotated[
        int,
        cyclopts.Parameter(
            help="Also run this many trials on seeds seed, seed+1, …", validator=cyclopts.validators.Number(gte=0)
        ),
    ] = 0,
    workers: typing.Annotated[
        int | None, cyclopts.Parameter(help="Threads for the trials (default from config.json)")
    ] = None,
    tolerance: common.ToleranceFlag = None,
    out: common.OutFlag = None,
):
    """Sample outcomes at the problem's ε and estimate it back by maximum likelihood.

    The problem file must set `epsilon`, `samples` and `seed`. Exits with code 3 when the
    likelihood search does not converge (the report is still written).
    """
    tolerances = common.resolve_tolerances(tolerance)
    spec, digest = common.load_problem(file, tolerances)
    missing = [name for name in ("epsilon", "samples", "seed") if getattr(spec, name) is None]
    if missing:
        common.output_message(f"simulate requires {', '.join(missing)} in the problem file", error=True)
        sys.exit(consts.EXIT_INVALID_INPUT)
    epsilon = typing.cast(float, spec.epsilon)
    samples = typing.cast(int, spec.samples)
    seed = typing.cast(int, spec.seed)

    problem = WeakMeasurementProblem.from_spec(spec, tolerances)
    summary = problem.simulate(epsilon, samples, seed)
    if trials:
        pool = workers if workers is not None else config.settings.workers
        summary = summary.model_copy(
            update={"trials": problem.trials(epsilon, samples, range(seed, seed + trials), workers=pool)}
        )

    warnings = list(problem.distribution(epsilon, exact=False).warnings)
    if not summary.mle.converged:
        warnings.append("maximum-likelihood search did not converge")
    report = common.build_report(
        "simulate",
        file,
        digest,
        arguments={"epsilon": epsilon, "samples": samples, "seed": seed, "trials": trials},
        fisher=problem.fisher(),
        simulation=summary,
        warnings=tuple(warnings),
    )
    common.write_report(report, count_rows(summary.counts), out)

    if not summary.mle.converged:
        raise exceptions.NumericError(
            f"maximum-likelihood search did not converge (score {summary.mle.score:.3e} after "
            f"{summary.mle.iterations} iterations)"
        )
