"""
Command line front end.

    halfstrip verify [--check ID ...] [--all] [--tag TAG] [--extended] [--p LIST]
    halfstrip eval cauchy --fn EXPR --at POINTS
    halfstrip norm --fn EXPR --p P --side plus|minus
    halfstrip map --which phi+|phi-|psi+|psi- --at POINTS
    halfstrip decompose --fn EXPR --at POINTS
    halfstrip limit --fn EXPR --zeta0 POINT --alpha A
    halfstrip config --write FILE

Exit codes: 0 success (every check passed), 1 at least one check failed,
2 usage or parameter error, 3 numerical error or inconclusive result.
"""

import argparse
import logging
import math
import sys

from ..exceptions import HalfstripError, ParameterError
from ..geometry import Side
from ..services import experiments, output
from ..verify import FAIL, INCONCLUSIVE
from .config import FORMATS, RunConfig
from .fnspec import parse_function, parse_point, parse_points, parse_reals

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

REPORT_COLUMNS = (
    "check_id",
    "paper_ref",
    "samples",
    "max_violation",
    "tolerance",
    "verdict",
    "runtime_ms",
)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG"
    )
    common.add_argument("--config", help="key-value configuration file")
    common.add_argument("--output", help="output file (stdout when omitted)")
    common.add_argument("--format", choices=FORMATS, help="output format")
    common.add_argument("--seed", type=int, help="seed for sample points")
    common.add_argument("--threads", type=int, help="worker thread cap")
    common.add_argument("--sigma", type=float, help="half-width of the strip")
    common.add_argument("--p", help="exponent or comma separated exponents")
    common.add_argument("--rel-tol", type=float, help="relative quadrature tolerance")
    common.add_argument("--abs-tol", type=float, help="absolute quadrature tolerance")
    common.add_argument("--depth", type=int, help="number of contours in the norm grid")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="halfstrip", description="Numerical Hardy spaces on half-strip domains."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", parents=[common], help="run verification checks")
    verify.add_argument("--check", action="append", default=[], help="check id (repeatable)")
    verify.add_argument("--all", action="store_true", help="run every selected check")
    verify.add_argument("--tag", action="append", default=[], help="only checks with this tag")
    verify.add_argument("--extended", action="store_true", help="include the extended checks")
    verify.add_argument("--timings", action="store_true", help="record wall time in reports")

    evaluate = commands.add_parser("eval", help="evaluate transforms")
    targets = evaluate.add_subparsers(dest="target", required=True)
    cauchy = targets.add_parser("cauchy", parents=[common], help="Cauchy transform of a trace")
    cauchy.add_argument("--fn", required=True, help="function expression")
    cauchy.add_argument("--at", required=True, help="points off the contour")

    norm = commands.add_parser("norm", parents=[common], help="H^p norm grid")
    norm.add_argument("--fn", required=True, help="function expression")
    norm.add_argument("--side", choices=[side.value for side in Side], default=Side.PLUS.value)

    conformal = commands.add_parser("map", parents=[common], help="conformal maps")
    conformal.add_argument("--which", required=True, choices=sorted(experiments.MAPS))
    conformal.add_argument("--at", required=True, help="points")

    decompose = commands.add_parser("decompose", parents=[common], help="jump components")
    decompose.add_argument("--fn", required=True, help="function expression")
    decompose.add_argument("--at", required=True, help="points")
    decompose.add_argument("--alpha", type=float, default=1.0, help="cone aperture on Gamma")

    limit = commands.add_parser("limit", parents=[common], help="non-tangential limit table")
    limit.add_argument("--fn", required=True, help="function expression")
    limit.add_argument("--zeta0", required=True, help="non-corner point of Gamma")
    limit.add_argument("--alpha", type=float, default=1.0, help="cone aperture")
    limit.add_argument("--side", choices=[side.value for side in Side], default=Side.PLUS.value)

    config = commands.add_parser("config", parents=[common], help="effective configuration")
    config.add_argument("--write", metavar="FILE", help="write the configuration to FILE")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def load_config(args) -> RunConfig:
    """Settings, then the config file, then command line flags."""
    config = RunConfig.load(args.config) if args.config else RunConfig()
    return config.override(
        sigma=args.sigma,
        p=parse_reals(args.p) if args.p else None,
        rel_tol=args.rel_tol,
        abs_tol=args.abs_tol,
        depth=args.depth,
        seed=args.seed,
        threads=args.threads,
        output=args.output,
        format=args.format,
    )


def _cell(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _table_records(header, rows) -> list[dict]:
    records = []
    for row in rows:
        cells = []
        for value in row:
            cells.extend([value.real, value.imag] if isinstance(value, complex) else [value])
        records.append({name: _cell(cell) for name, cell in zip(header, cells, strict=True)})
    return records


def _emit_table(result: dict, config: RunConfig, fmt: str | None) -> int:
    if fmt == "json":
        records = _table_records(result["header"], result["rows"])
        written = output.write_reports(records, config.output)
    else:
        written = output.write_table(result["header"], result["rows"], config.output)
    if not written.success:
        logger.error(f"Could not write output: {written.error}")
        return EXIT_USAGE
    if not result.get("accurate", True):
        logger.warning("requested accuracy was not reached")
        return EXIT_NUMERICAL
    return EXIT_OK


def _failure_code(result: dict) -> int:
    print(f"error: {result['error']}", file=sys.stderr)
    return EXIT_NUMERICAL if result.get("numerical") else EXIT_USAGE


def _run_verify(args, config: RunConfig) -> int:
    if args.check and (args.all or args.tag):
        raise ParameterError("--check cannot be combined with --all or --tag")
    result = experiments.verify_checks(
        config,
        args.check,
        tags=args.tag or None,
        extended=args.extended,
        timings=True if args.timings else None,
    )
    if not result["success"]:
        return _failure_code(result)

    reports = result["reports"]
    if config.format == "csv":
        rows = []
        for report in reports:
            record = report.to_dict()
            record["samples"] = record["params"]["samples"]
            rows.append([record[column] for column in REPORT_COLUMNS])
        written = output.write_table(REPORT_COLUMNS, rows, config.output)
    else:
        written = output.write_reports(reports, config.output)
    if not written.success:
        logger.error(f"Could not write reports: {written.error}")
        return EXIT_USAGE
    output.write_summary(reports, result["summary"])

    summary = result["summary"]
    if summary[FAIL]:
        return EXIT_FAIL
    if summary[INCONCLUSIVE]:
        return EXIT_NUMERICAL
    return EXIT_OK


def _run_table(args, config: RunConfig) -> int:
    if args.command == "eval":
        result = experiments.evaluate_cauchy(parse_function(args.fn), parse_points(args.at), config)
    elif args.command == "norm":
        expr = parse_function(args.fn)
        exponents = config.p or (2.0,)
        result = {"success": True, "header": ["p", "s", "t", "m"], "rows": [], "accurate": True}
        for p in exponents:
            grid = experiments.norm_grid(expr, p, Side(args.side), config)
            if not grid["success"]:
                return _failure_code(grid)
            result["rows"].extend([p, *row] for row in grid["rows"])
            logger.info(f"H^p norm estimate for p={p}: {grid['value']} ({grid['trend']})")
    elif args.command == "map":
        result = experiments.map_points(args.which, parse_points(args.at), config)
    elif args.command == "decompose":
        result = experiments.decompose_points(
            parse_function(args.fn), parse_points(args.at), config, alpha=args.alpha
        )
    else:
        result = experiments.limit_table(
            parse_function(args.fn),
            parse_point(args.zeta0),
            args.alpha,
            config,
            side=Side(args.side),
        )
    if not result["success"]:
        return _failure_code(result)
    return _emit_table(result, config, args.format)


def _run_config(args, config: RunConfig) -> int:
    text = config.to_text()
    if not args.write:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.write, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as e:
        print(f"error: cannot write {args.write}: {e}", file=sys.stderr)
        return EXIT_USAGE
    logger.info(f"Wrote configuration to {args.write}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    """Run the command line; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    _configure_logging(args.verbose)
    try:
        config = load_config(args)
        if args.command == "verify":
            return _run_verify(args, config)
        if args.command == "config":
            return _run_config(args, config)
        return _run_table(args, config)
    except HalfstripError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
