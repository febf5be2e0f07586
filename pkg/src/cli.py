"""
Command-line front end: ``python -m src.cli <command> [options]``.

Exit status: 0 success, 2 invalid input or failed check, 1 internal error,
64 unknown command.
"""

import argparse
import sys
from typing import Callable, Optional

from loguru import logger

from config.app_config import DEFAULT_CONFIG_PATH, ConfigModel, load_config
from config.env_config import get_settings
from src.controllers.critical_line_controller import CriticalLineController
from src.controllers.domain_controller import DomainController
from src.controllers.forms_controller import FormsController
from src.controllers.holomorphy_controller import HolomorphyController
from src.controllers.kernel_controller import KernelController
from src.controllers.norm_controller import NormController
from src.controllers.report_controller import ReportController
from src.enums.kinds_enum import FactorSign, InequalityKind, KernelKind, NormKind
from src.enums.messages_enum import Messages
from src.helpers.log_helper import Logger
from src.helpers.serialization_helper import dumps_report, flatten, parse_complex, rows_to_csv

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_VALIDATION = 2
EXIT_USAGE = 64

COMMANDS = (
    "norm",
    "region",
    "green-check",
    "boundary",
    "check",
    "pathology",
    "factorize",
    "holo",
    "report",
)


class ValidationFailure(Exception):
    """A check ran to completion but did not pass."""


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as error:
        raise argparse.ArgumentTypeError(str(error))


def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="YAML configuration file")
    parser.add_argument("--t-min", type=float, dest="t_min")
    parser.add_argument("--t-max", type=float, dest="t_max")
    parser.add_argument("--n", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", choices=["json", "csv"], help="Output format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bessel-lab", description="Bessel operator domain lab")
    commands = parser.add_subparsers(dest="command", metavar="{" + ",".join(COMMANDS) + "}")

    norm = commands.add_parser("norm", help="Norm of Q_alpha or Z_m by three methods")
    norm.add_argument("--alpha", type=_complex_arg, required=True)
    norm.add_argument("--kind", choices=[k.value for k in NormKind], default=NormKind.Q.value)

    region = commands.add_parser("region", help="Position of alpha relative to the parabola")
    region.add_argument("--alpha", type=_complex_arg, required=True)

    green = commands.add_parser("green-check", help="Residual of L_alpha G g = g")
    green.add_argument("--alpha", type=_complex_arg, required=True)
    green.add_argument("--kind", choices=[KernelKind.FORWARD_GREEN.value, KernelKind.TWO_SIDED_GREEN.value])
    green.add_argument("--center", type=float, default=1.0)
    green.add_argument("--width", type=float, default=1.0)
    green.add_argument("--matrix-out", dest="matrix_out", help="Write the discretized kernel to this CSV file")

    boundary = commands.add_parser("boundary", help="Boundary coefficients and domain class")
    boundary.add_argument("--m", type=_complex_arg, required=True)
    boundary.add_argument("--c-plus", type=_complex_arg, default=1 + 0j, dest="c_plus")
    boundary.add_argument("--c-minus", type=_complex_arg, default=0j, dest="c_minus")
    boundary.add_argument("--smooth", type=float, default=0.0)
    boundary.add_argument("--a", type=float, default=0.5)

    check = commands.add_parser("check", help="Inequality check")
    check.add_argument("--kind", choices=[k.value for k in InequalityKind], required=True)
    check.add_argument("--alpha", type=_complex_arg)

    pathology = commands.add_parser("pathology", help="Critical-line divergence diagnostic")
    pathology.add_argument("--tau", type=float, required=True)
    pathology.add_argument("--m", type=_complex_arg, required=True)

    factorize = commands.add_parser("factorize", help="Factorized forms of H_m")
    factorize.add_argument("--m", type=_complex_arg, required=True)
    factorize.add_argument("--sign", choices=[s.value for s in FactorSign], default=FactorSign.PLUS.value)

    holo = commands.add_parser("holo", help="Analyticity and perturbation checks")
    holo.add_argument("--alpha0", type=_complex_arg, default=0.25 + 0j)
    holo.add_argument("--r", type=float, default=0.1)

    commands.add_parser("report", help="Reduced acceptance suite")

    for sub in commands.choices.values():
        _common(sub)
    return parser


def resolve_config(args: argparse.Namespace) -> ConfigModel:
    """YAML file first, then command-line flags on top."""
    settings = get_settings()
    path = args.config or settings.CONFIG_PATH or DEFAULT_CONFIG_PATH
    raw = load_config(path).model_dump()
    for key in ("t_min", "t_max", "n"):
        if getattr(args, key) is not None:
            raw["grid"][key] = getattr(args, key)
    if args.seed is not None:
        raw["run"]["seed"] = args.seed
    if args.out is not None:
        raw["run"]["output_format"] = args.out
    return ConfigModel(**raw)


def _require(passed: bool, report):
    if not passed:
        raise ValidationFailure(report)
    return report


def _dispatch(args, config: ConfigModel) -> tuple[object, Optional[Callable]]:
    """Returns the report and, for tabular reports, a row builder for CSV output."""
    command = args.command
    if command == "norm":
        return NormController(config).norm(args.alpha, args.kind), None
    if command == "region":
        return NormController(config).region(args.alpha), None
    if command == "green-check":
        report = KernelController(config).green_check(
            args.alpha, args.kind, args.center, args.width, args.matrix_out
        )
        return report, None
    if command == "boundary":
        report = DomainController(config).boundary(args.m, args.c_plus, args.c_minus, args.smooth, args.a)
        return report, None
    if command == "check":
        record = DomainController(config).check(args.kind, args.alpha)
        return _require(record.holds, record), None
    if command == "pathology":
        controller = CriticalLineController(config)
        return controller.pathology(args.tau, args.m), controller.rows
    if command == "factorize":
        return FormsController(config).factorize(args.m, args.sign), None
    if command == "holo":
        return HolomorphyController(config).holo(args.alpha0, args.r), None
    report = ReportController(config).report()
    return _require(report["passed"], report), None


def _render(report, rows: Optional[Callable], output_format: str) -> str:
    if output_format == "csv":
        table = rows(report) if rows else [flatten(report)]
        return rows_to_csv(table, list(table[0].keys()) if table else [])
    return dumps_report(report) + "\n"


def execute(argv: list[str], stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    if not argv or argv[0] not in COMMANDS:
        parser.print_usage(sys.stderr)
        logger.error(f"{Messages.UNKNOWN_COMMAND.value}: {argv[0] if argv else ''}")
        return EXIT_USAGE

    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return EXIT_OK if exit_.code == 0 else EXIT_VALIDATION

    try:
        config = resolve_config(args)
        report, rows = _dispatch(args, config)
    except ValidationFailure as failure:
        report = failure.args[0]
        stdout.write(_render(report, None, config.run.output_format))
        logger.warning(f"{args.command}: {Messages.VALIDATION_FAILURE.value}")
        return EXIT_VALIDATION
    except ValueError as error:
        sys.stderr.write(f"{Messages.PARAMETER_FAILURE.value}: {error}\n")
        logger.warning(f"{args.command}: {error}")
        return EXIT_VALIDATION
    except Exception as error:
        sys.stderr.write(f"{Messages.INTERNAL_FAILURE.value}: {error}\n")
        logger.exception(f"{args.command} failed")
        return EXIT_INTERNAL

    stdout.write(_render(report, rows, config.run.output_format))
    logger.info(f"{args.command}: {Messages.REPORT_SUCCESS.value}")
    return EXIT_OK


def main():
    settings = get_settings()
    logger.remove()
    logger.add(sys.stderr, level="WARNING")
    Logger(log_name="bessel_cli", log_dir=settings.LOG_DIR, level=settings.LOG_LEVEL)
    sys.exit(execute(sys.argv[1:]))


if __name__ == "__main__":
    main()
