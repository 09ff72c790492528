# Command-line interface: parse spec files, compute brackets and run verification suites.

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any, NamedTuple

from algebroid_fn._internal import debug
from algebroid_fn._internal.algebroid import validate_algebroid
from algebroid_fn._internal.config import SuiteOptions, default_seed
from algebroid_fn._internal.errors import AlgebroidError, UsageError
from algebroid_fn._internal.fncalc import deform, default_connection, fn_bracket, nijenhuis
from algebroid_fn._internal.specfile import (
    SpecFile,
    algebroid_to_record,
    dump_json,
    form_to_record,
    parse_indices,
    parse_spec,
    section_to_record,
)
from algebroid_fn._internal.suites import SUITES, run_suite
from algebroid_fn._internal.vforms import eval_form

if TYPE_CHECKING:
    from collections.abc import Sequence

    from algebroid_fn._internal.connections import Connection

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

SYNTHESIZED_CONNECTION = "symmetrize(zero)"
"""Name reported in headers when no connection was given."""


class CommandResult(NamedTuple):
    """Exit status and text output of a command."""

    status: int
    """`0` on success, `1` when a check failed."""
    output: str
    """Text to print."""


class _DebugInfo(argparse.Action):
    def __init__(self, nargs: int | str | None = 0, **kwargs: Any) -> None:
        super().__init__(nargs=nargs, **kwargs)

    def __call__(self, *args: Any, **kwargs: Any) -> None:  # noqa: ARG002
        debug.print_debug_info()
        sys.exit(EXIT_OK)


def get_parser() -> argparse.ArgumentParser:
    """Return the CLI argument parser.

    Returns:
        An argparse parser.
    """
    parser = argparse.ArgumentParser(
        prog="algebroid-fn",
        description="Exact Frolicher-Nijenhuis calculus on Lie algebroids.",
    )
    parser.add_argument("--debug-info", action=_DebugInfo, help="Print debug information.")
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log more; repeat for debug output.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text, description=help_text)
        sub.add_argument("spec", type=Path, help="Spec file to read.")
        sub.add_argument("--skip-validate", action="store_true", help="Do not validate the algebroid.")
        sub.add_argument("--output", type=Path, help="Write the output to this file instead of stdout.")
        return sub

    command("check", "Validate the Jacobi identity and the anchor morphism.")

    fn = command("fn", "Compute the bracket of two A-valued forms.")
    fn.add_argument("--phi", required=True, help="Name of the first form.")
    fn.add_argument("--psi", required=True, help="Name of the second form.")
    fn.add_argument("--connection", help="Torsion-free connection on A to compute with.")

    nij = command("nijenhuis", "Compute the Nijenhuis torsion of an A-valued 1-form.")
    nij.add_argument("--n", dest="tensor", required=True, help="Name of the 1-form.")
    nij.add_argument("--connection", help="Torsion-free connection on A to compute with.")

    dfm = command("deform", "Deform the algebroid along an A-valued 1-form and validate the result.")
    dfm.add_argument("--n", dest="tensor", required=True, help="Name of the 1-form.")

    evl = command("eval", "Evaluate a form on frame elements.")
    evl.add_argument("--form", required=True, help="Name of the form.")
    evl.add_argument("--args", default="", help="Comma-separated 1-based frame indices.")

    vfy = command("verify", "Run verification suites on the algebroid.")
    vfy.add_argument(
        "--suite",
        action="append",
        choices=[*SUITES, "all"],
        help="Suite to run; repeatable, all suites by default.",
    )
    vfy.add_argument("--seed", type=int, help="Random seed, defaults to $ALGEBROID_FN_SEED or 0.")
    vfy.add_argument("--connection", help="Connection on A to use instead of random torsion-free ones.")
    vfy.add_argument("--samples", type=int, help="Random instances per degree combination.")
    vfy.add_argument("--max-degree", type=int, help="Largest degree of the random A-valued forms.")
    return parser


def _connection(spec: SpecFile, name: str | None) -> tuple[Connection, str, bool]:
    if name is None:
        _logger.warning("no connection given, using the torsion-free %s", SYNTHESIZED_CONNECTION)
        return default_connection(spec.algebroid), SYNTHESIZED_CONNECTION, True
    return spec.connection(name), name, False


def _check(spec: SpecFile, opts: argparse.Namespace) -> CommandResult:  # noqa: ARG001
    report = validate_algebroid(spec.algebroid)
    lines = [report.summary()]
    lines.extend(
        f"jacobi fails on {[i + 1 for i in triple]}: [{', '.join(map(str, value))}]"
        for triple, value in report.jacobi_failures
    )
    lines.extend(
        f"anchor-morphism fails on {[a + 1, b + 1]} at x{i + 1}: {value}" for (a, b, i), value in report.anchor_failures
    )
    return CommandResult(EXIT_OK if report.passed else EXIT_FAILED, "\n".join(lines) + "\n")


def _fn(spec: SpecFile, opts: argparse.Namespace) -> CommandResult:
    connection, connection_name, synthesized = _connection(spec, opts.connection)
    result = fn_bracket(connection, spec.form(opts.phi), spec.form(opts.psi))
    header = {
        "command": "fn",
        "phi": opts.phi,
        "psi": opts.psi,
        "connection": connection_name,
        "synthesized_connection": synthesized,
    }
    return CommandResult(EXIT_OK, dump_json({"header": header, "form": form_to_record(result, spec.bundles)}) + "\n")


def _nijenhuis(spec: SpecFile, opts: argparse.Namespace) -> CommandResult:
    connection, connection_name, synthesized = _connection(spec, opts.connection)
    result = nijenhuis(connection, spec.form(opts.tensor))
    header = {
        "command": "nijenhuis",
        "n": opts.tensor,
        "connection": connection_name,
        "synthesized_connection": synthesized,
        "vanishes": result.is_zero(),
    }
    return CommandResult(EXIT_OK, dump_json({"header": header, "form": form_to_record(result, spec.bundles)}) + "\n")


def _deform(spec: SpecFile, opts: argparse.Namespace) -> CommandResult:
    result = deform(spec.algebroid, spec.form(opts.tensor))
    header = {
        "command": "deform",
        "n": opts.tensor,
        "validation": result.report.summary(),
        "nijenhuis_vanishes": result.nijenhuis_vanishes,
    }
    document = {"header": header, "algebroid": algebroid_to_record(result.algebroid)}
    return CommandResult(EXIT_OK if result.passed else EXIT_FAILED, dump_json(document) + "\n")


def _eval(spec: SpecFile, opts: argparse.Namespace) -> CommandResult:
    form = spec.form(opts.form)
    indices = parse_indices(opts.args, spec.algebroid.rank)
    value = eval_form(form, *(spec.algebroid.frame(a) for a in indices))
    header = {"command": "eval", "form": opts.form, "args": [a + 1 for a in indices]}
    return CommandResult(EXIT_OK, dump_json({"header": header, "value": section_to_record(value)}) + "\n")


def _verify(spec: SpecFile, opts: argparse.Namespace) -> CommandResult:
    names = opts.suite or ["all"]
    if "all" in names:
        names = list(SUITES)
    data: dict[str, Any] = {"seed": default_seed() if opts.seed is None else opts.seed}
    if opts.samples is not None:
        data["samples"] = opts.samples
    if opts.max_degree is not None:
        data["max_degree"] = opts.max_degree
    options = SuiteOptions.from_data(**data)
    connection = spec.connection(opts.connection) if opts.connection else None
    output = []
    passed = True
    for name in names:
        report = run_suite(name, options, algebroids=[spec.algebroid], connection=connection)
        output.append(report.to_json_lines())
        passed = passed and report.passed
    return CommandResult(EXIT_OK if passed else EXIT_FAILED, "".join(output))


_COMMANDS = {
    "check": _check,
    "fn": _fn,
    "nijenhuis": _nijenhuis,
    "deform": _deform,
    "eval": _eval,
    "verify": _verify,
}


def run_command(command: str, opts: argparse.Namespace) -> CommandResult:
    """Run one command on parsed arguments.

    Raises:
        AlgebroidError: On unknown names, parse errors and violated preconditions.

    Returns:
        The exit status and output.
    """
    if command not in _COMMANDS:
        raise UsageError(f"unknown command {command!r}")
    if command == "check":
        # check reports failures itself instead of rejecting the file
        return _check(parse_spec(opts.spec, skip_validate=True), opts)
    if opts.skip_validate:
        _logger.warning("skipping validation of %s", opts.spec)
    spec = parse_spec(opts.spec, skip_validate=opts.skip_validate)
    return _COMMANDS[command](spec, opts)


def main(args: Sequence[str] | None = None) -> int:
    """Run the main program.

    This function is executed when you type `algebroid-fn` or `python -m algebroid_fn`.

    Parameters:
        args: Arguments passed from the command line.

    Returns:
        An exit code: `0` on success, `1` when a check failed, `2` on usage or input errors.
    """
    parser = get_parser()
    opts = parser.parse_args(args=args)
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(opts.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s: %(name)s: %(message)s")
    try:
        result = run_command(opts.command, opts)
        if opts.output:
            opts.output.write_text(result.output, encoding="utf8")
        else:
            sys.stdout.write(result.output)
    except (AlgebroidError, ValueError) as error:
        print(f"algebroid-fn: error: {error}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as error:
        print(f"algebroid-fn: error: {error.filename or opts.spec}: {error.strerror or error}", file=sys.stderr)
        return EXIT_USAGE
    return result.status
