"""Shared CLI helpers: output format, logging, problem loading and report writing."""

import csv
import hashlib
import io
import logging
import pathlib
import sys
import typing

import better_exceptions
import cyclopts
import pydantic
import structlog
from rich import console as rich_console
from rich import markup

from weakmeas import __version__, consts
from weakmeas.cli import config
from weakmeas.cli import consts as cli_consts
from weakmeas.models import DEFAULT_TOLERANCES, ProblemSpec, Report, Tolerances

if typing.TYPE_CHECKING:
    from structlog.typing import Processor

# Setup
better_exceptions.hook()
err_console = rich_console.Console(stderr=True)
logger = structlog.get_logger(consts.APP_NAME)

# -- Shared command flags ---------------------------------------------------

ProblemFile = typing.Annotated[
    pathlib.Path,
    cyclopts.Parameter(help="Problem file (JSON document)"),
]
ToleranceFlag = typing.Annotated[
    float | None,
    cyclopts.Parameter(name=["--tolerance"], help="Tolerance of the real-weak-value criterion"),
]
OutFlag = typing.Annotated[
    pathlib.Path | None,
    cyclopts.Parameter(name=["--out"], help="Write the report to this file instead of stdout"),
]

# -- Output format ----------------------------------------------------------

_output_format: config.OutputFormat | None = None  # None means "resolve lazily from config"


def set_output_format(fmt: str | None) -> None:
    """Set the output format (called from --format CLI flag).

    Calls `sys.exit` if an invalid format is specified.
    """
    global _output_format
    try:
        _output_format = config.OutputFormat(fmt) if fmt is not None else None
    except ValueError:
        output_message(
            f"Error: `{fmt}` is not a valid output format. Valid formats are: {', '.join(config.OutputFormat)}",
            error=True,
        )
        sys.exit(cli_consts.EXIT_INVALID_INPUT)


def get_output_format() -> config.OutputFormat:
    """Resolve the active output format: CLI flag > config > structured document."""
    if _output_format is not None:
        return _output_format
    cfg_fmt = getattr(config.settings, "output_format", None)
    if cfg_fmt:
        return cfg_fmt
    return config.OutputFormat.DOC


def output_message(msg: str, *, error: bool = False) -> None:
    """Print a status or error message on stderr; stdout carries only the report.

    Error messages are printed verbatim in red; other messages may contain rich markup.
    """
    err_console.print(f"[red]{markup.escape(msg)}[/red]" if error else msg, highlight=False, soft_wrap=True)


_LOGGING_INITIALIZED = False


def configure_logging(verbose: bool | None, debug: bool | None):
    """Sets up structlog/logging based on verbosity."""
    global _LOGGING_INITIALIZED
    global logger

    # If no flags provided and we are already initialized, do nothing (inherit state)
    if verbose is None and debug is None:
        if _LOGGING_INITIALIZED:
            return
        verbose = False
        debug = False

    _LOGGING_INITIALIZED = True

    if debug:
        level = logging.DEBUG
    elif verbose:
        level = logging.INFO
    else:
        level = logging.WARNING

    processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.StackInfoRenderer(),
        structlog.dev.set_exc_info,
        structlog.processors.TimeStamper(fmt="%H:%M:%S", utc=False),
    ]

    if not sys.stderr.isatty():
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=True))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(sys.stderr),
    )
    logger = structlog.get_logger(consts.APP_NAME)


# -- Problems and reports ---------------------------------------------------


def resolve_tolerances(tolerance: float | None) -> Tolerances:
    """Tolerance record for a command: --tolerance > config.json > built-in default.

    Raises:
        pydantic.ValidationError: If the tolerance is not positive.
    """
    value = tolerance if tolerance is not None else config.settings.tolerance
    if value is None:
        return DEFAULT_TOLERANCES
    return Tolerances.model_validate({**DEFAULT_TOLERANCES.model_dump(), "real_basis": value})


def load_problem(path: pathlib.Path, tolerances: Tolerances = DEFAULT_TOLERANCES) -> tuple[ProblemSpec, str]:
    """Parse and validate a problem file.

    Returns:
        The problem and the SHA-256 digest of the file bytes.

    Raises:
        OSError: If the file cannot be read.
        pydantic.ValidationError: If the document is malformed or violates a model invariant.
    """
    data = path.read_bytes()
    digest = f"sha256:{hashlib.sha256(data).hexdigest()}"
    logger.info("Loading problem", path=str(path), digest=digest)
    spec = ProblemSpec.model_validate_json(data, context={"tolerances": tolerances})
    return spec, digest


def build_report(command: str, path: pathlib.Path, digest: str, **sections: typing.Any) -> Report:
    """Assemble a report; the file is echoed by name so reports do not depend on its location."""
    arguments = {"file": path.name, **sections.pop("arguments", {})}
    return Report(
        schema_version=consts.SCHEMA_VERSION,
        weakmeas_version=__version__,
        command=command,
        arguments=arguments,
        input_digest=digest,
        **sections,
    )


def format_csv(rows: list[dict[str, typing.Any]]) -> str:
    """Render rows as CSV with a header taken from the first row."""
    buffer = io.StringIO()
    if rows:
        writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buffer.getvalue()


def write_report(report: Report, rows: list[dict[str, typing.Any]], out: pathlib.Path | None) -> None:
    """Write the report (or its main table with ``--format csv``) to `out` or stdout."""
    if get_output_format() == config.OutputFormat.CSV:
        text = format_csv(rows)
    else:
        text = report.model_dump_json(indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    out.write_text(text, encoding="utf-8")
    logger.info("Wrote report", path=str(out), command=report.command)


def read_report(path: pathlib.Path) -> Report:
    """Load a report written by `write_report`."""
    return Report.model_validate_json(path.read_bytes())


def validation_lines(error: pydantic.ValidationError) -> list[str]:
    """One ``field.path: message`` line per validation failure."""
    lines = []
    for item in error.errors(include_url=False):
        location = ".".join(str(part) for part in item["loc"]) or "<document>"
        lines.append(f"{location}: {item['msg']}")
    return lines
