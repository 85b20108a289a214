"""Main entry point for the CLI."""

import sys
import typing

import cyclopts
import pydantic

from weakmeas import __version__, exceptions
from weakmeas.cli import common, consts
from weakmeas.cli.commands import fisher, scan, simulate, weak_values

# Define the App
app = cyclopts.App(
    name="weakmeas",
    help="Weak values, Fisher information and Cramér–Rao checks for weak measurements",
    version=__version__,
    version_flags=["--version"],
    help_flags=["--help"],
)

app.command(weak_values.weak_values_command, name="weak-values")
app.command(fisher.fisher_command, name="fisher")
app.command(simulate.simulate_command, name="simulate")
app.command(scan.scan_command, name="scan")


@app.meta.default
def entry_point(
    tokens: typing.Annotated[list[str] | None, cyclopts.Parameter(show=False, allow_leading_hyphen=True)] = None,
    verbose: typing.Annotated[
        bool, cyclopts.Parameter(name=["--verbose", "-v"], help="Enable verbose logging")
    ] = False,
    debug: typing.Annotated[bool, cyclopts.Parameter(name=["--debug"], help="Enable debug logging")] = False,
    output_format: typing.Annotated[
        str | None,
        cyclopts.Parameter(
            name=["--format"],
            help="Output format: doc (JSON report, default) or csv (main table only)",
        ),
    ] = None,
):
    """Main entry point handling global flags."""
    common.configure_logging(verbose, debug)

    if output_format is not None:
        common.set_output_format(output_format)

    if tokens is None:
        tokens = []
    app(tokens, exit_on_error=False)


def main(args: list[str] | None = None):
    """Main entry point.

    Exit codes: 0 on success, 2 for invalid input or usage, 3 for numeric failures, 1 otherwise.
    """
    if args is None:
        args = sys.argv[1:]

    try:
        app.meta(args, exit_on_error=False)
    except cyclopts.exceptions.CycloptsError as e:
        common.output_message(f"Error: {e}", error=True)
        sys.exit(consts.EXIT_INVALID_INPUT)
    except pydantic.ValidationError as e:
        common.output_message(f"Invalid input ({e.error_count()} errors):", error=True)
        for line in common.validation_lines(e):
            common.output_message(f"  {line}", error=True)
        sys.exit(consts.EXIT_INVALID_INPUT)
    except exceptions.NumericError as e:
        common.output_message(f"Numeric failure: {e}", error=True)
        sys.exit(consts.EXIT_NUMERIC)
    except (exceptions.WeakMeasError, OSError) as e:
        code = getattr(e, "code", type(e).__name__)
        common.output_message(f"{code}: {e}", error=True)
        sys.exit(consts.EXIT_INVALID_INPUT)
    except Exception as e:
        common.output_message(f"Unexpected Error: {e}", error=True)
        common.logger.exception("An unexpected error occurred")
        sys.exit(consts.EXIT_ERROR)


if __name__ == "__main__":
    main()
