"""
KLR Algebra Toolkit - Main Application
Batch command line for quiver Hecke algebras of Borcherds-Cartan data.

Usage:
    python app.py <command> --datum file.json [options]

Commands: validate, gdim, verify, character, pair.
Exit codes: 0 success, 1 datum rejected, 2 argument or configuration error,
3 verification failure.
"""

import argparse
import logging
import sys
from typing import Dict, List, Optional, Tuple

from src.errors import GuardExceeded, InvalidArg, KLRError
from src.klr_core import corner_numerator, gdim_center, gdim_corner, gdim_divided_corner
from src.qgroup import FreeQElement, pair
from src.reptheory import (
    char_V_real,
    character_of,
    induced_trivials,
    lbar,
    submodule_lattice_probe,
    trivial_V,
)
from src.wordcomb import format_sequence, parse_divided, parse_sequence, parse_weight, sequences_of_weight
from utils.config import RunConfig
from utils.datum_file import DatumFileHandler
from utils.report_writer import ReportWriter, make_report
from utils.suite_runner import SUITES, SuiteRunner

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID_DATUM = 1
EXIT_BAD_ARGS = 2
EXIT_VERIFY_FAILED = 3

MODULE_KINDS = ("trivial", "lbar", "induced", "real")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="klr", description="Quiver Hecke algebras of Borcherds-Cartan data.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--datum", required=True, help="Datum JSON file.")
    common.add_argument("--cap", type=int, help="Truncation degree of every series (default 24).")
    common.add_argument("--max-ht", dest="max_ht", type=int, help="Guard on weight heights (default 4, at most 6).")
    common.add_argument("--max-n", dest="max_n", type=int, help="Guard on module strand counts (default 5, at most 6).")
    common.add_argument("--test-degree", dest="test_degree", type=int, help="Monomial degree of the relation suite.")
    common.add_argument("--width", type=int, help="Worker processes for sweeps.")
    common.add_argument("--seed", type=int, help="Seed of randomized checks.")
    common.add_argument("--samples", type=int, help="Random samples per randomized check.")
    common.add_argument("--format", choices=["json", "text", "csv", "xlsx"], help="Report format.")
    common.add_argument("--output", help="Write the report here instead of stdout.")
    common.add_argument("--checkpoint-dir", dest="checkpoint_dir", help="Resume sweeps from this directory.")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--quiet", action="store_true", help="Only log warnings and errors.")
    verbosity.add_argument("--verbose", action="store_true", help="Log debug output.")

    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("validate", parents=[common], help="Validate a datum file.")

    gdim = commands.add_parser("gdim", parents=[common], help="Graded dimensions of corners and centers.")
    gdim.add_argument("--seq", help="Source sequence, e.g. \"i j i\".")
    gdim.add_argument("--to", help="Target sequence; defaults to the source.")
    gdim.add_argument("--divided", help="Divided shape on the idempotent side, e.g. \"i^(2) j\".")
    gdim.add_argument("--nu", help="Weight, e.g. \"i:2,j:1\", for a table of all corners.")
    gdim.add_argument("--center", action="store_true", help="Graded dimension of the center of R(nu).")

    verify = commands.add_parser("verify", parents=[common], help="Run verification suites.")
    verify.add_argument("--suite", action="append", required=True,
                        help=f"One of {', '.join(SUITES)}, or all; may be repeated.")

    character = commands.add_parser("character", parents=[common], help="Characters of constructed modules.")
    character.add_argument("--module", required=True,
                           help="\"trivial i n\", \"lbar i n\", \"induced i n m\" or \"real i n\".")
    character.add_argument("--probe", action="store_true", help="Also probe the submodule lattice.")
    character.add_argument("--actions", action="store_true", help="Include the action matrices.")

    pairing = commands.add_parser("pair", parents=[common], help="Both sides of one pairing.")
    pairing.add_argument("--seq", required=True, help="Word of the first argument.")
    pairing.add_argument("--to", required=True, help="Word of the second argument.")
    return parser


def cmd_validate(args, config: RunConfig) -> Tuple[Dict, int]:
    handler = DatumFileHandler()
    try:
        datum, derived = handler.load(args.datum)
    except KLRError as e:
        logger.error(f"Datum rejected: {str(e)}")
        return make_report("validate", config.to_dict(), None, False, error=e.code, message=str(e)), EXIT_INVALID_DATUM
    return make_report("validate", config.to_dict(), datum.to_dict(), True, derivedD=derived,
                       info=handler.get_datum_info(datum)), EXIT_OK


def cmd_gdim(args, datum, config: RunConfig) -> Tuple[Dict, int]:
    cap = config.cap
    if args.center:
        if not args.nu:
            raise InvalidArg("--center needs --nu")
        weight = parse_weight(args.nu)
        series = gdim_center(weight, datum, cap)
        return make_report("gdim", config.to_dict(), datum.to_dict(), True, nu=str(weight),
                           center=str(series), coefficients=series.to_dict()), EXIT_OK

    if args.nu and not args.seq:
        weight = parse_weight(args.nu)
        rows = []
        for src in sequences_of_weight(weight):
            for dst in sequences_of_weight(weight):
                rows.append({"source": format_sequence(src), "target": format_sequence(dst),
                             "gdim": str(gdim_corner(src, dst, datum, cap))})
        return make_report("gdim", config.to_dict(), datum.to_dict(), True, nu=str(weight), rows=rows), EXIT_OK

    if args.divided:
        shape = parse_divided(args.divided)
        dst = parse_sequence(args.to) if args.to else shape.hat()
        series = gdim_divided_corner(shape, dst, datum, cap)
        return make_report("gdim", config.to_dict(), datum.to_dict(), True, divided=str(shape),
                           sequence=format_sequence(dst), gdim=str(series), coefficients=series.to_dict()), EXIT_OK

    if not args.seq:
        raise InvalidArg("gdim needs --seq, --divided, --nu or --center")
    src = parse_sequence(args.seq)
    dst = parse_sequence(args.to) if args.to else src
    series = gdim_corner(src, dst, datum, cap)
    numerator, factors = corner_numerator(src, dst, datum)
    return make_report("gdim", config.to_dict(), datum.to_dict(), True,
                       source=format_sequence(src), target=format_sequence(dst), gdim=str(series),
                       coefficients=series.to_dict(),
                       closedForm={"numerator": str(numerator), "factors": list(factors)}), EXIT_OK


def cmd_verify(args, datum, config: RunConfig) -> Tuple[Dict, int]:
    suites: List[str] = []
    for name in args.suite:
        for part in name.split(","):
            part = part.strip()
            suites.extend(SUITES if part == "all" else [part])
    runner = SuiteRunner(datum, config)
    results = runner.run_all(suites)
    rows = [dict(row, suite=result.suite) for result in results for row in result.rows]
    ok = all(result.ok for result in results)
    report = make_report("verify", config.to_dict(), datum.to_dict(), ok,
                         suites=[result.to_dict() for result in results], rows=rows)
    return report, EXIT_OK if ok else EXIT_VERIFY_FAILED


def _module_args(text: str) -> Tuple[str, str, List[int]]:
    parts = text.split()
    if len(parts) < 3 or parts[0] not in MODULE_KINDS:
        raise InvalidArg(f"Cannot parse module {text!r}; expected one of {MODULE_KINDS} with a label and sizes")
    try:
        sizes = [int(p) for p in parts[2:]]
    except ValueError:
        raise InvalidArg(f"Module sizes must be integers: {text!r}")
    expected = 2 if parts[0] == "induced" else 1
    if len(sizes) != expected:
        raise InvalidArg(f"Module {parts[0]} takes {expected} size(s), got {len(sizes)}")
    return parts[0], parts[1], sizes


def cmd_character(args, datum, config: RunConfig) -> Tuple[Dict, int]:
    kind, label, sizes = _module_args(args.module)
    if sum(sizes) > config.max_n:
        raise GuardExceeded(f"Module {args.module!r} has {sum(sizes)} strands, guard is {config.max_n}")
    if kind == "real":
        ch = char_V_real(datum, label, sizes[0])
        return make_report("character", config.to_dict(), datum.to_dict(), True, module=args.module,
                           character=ch.to_dict()), EXIT_OK

    if kind == "trivial":
        module = trivial_V(datum, label, sizes[0])
    elif kind == "lbar":
        module = lbar(datum, label, sizes[0], guard=config.max_n)
    else:
        module = induced_trivials(datum, label, sizes[0], sizes[1], guard=config.max_n)
    body = {"module": args.module, "name": module.name, "dimension": module.dim,
            "character": character_of(module).to_dict()}
    if args.probe:
        probe = submodule_lattice_probe(module)
        body["probe"] = {"minimal": [len(s) for s in probe.minimal], "maximal": [len(s) for s in probe.maximal],
                         "spans": probe.to_dict()}
    if args.actions:
        body["actions"] = module.export_actions()
    return make_report("character", config.to_dict(), datum.to_dict(), True, **body), EXIT_OK


def cmd_pair(args, datum, config: RunConfig) -> Tuple[Dict, int]:
    left, right = parse_sequence(args.seq), parse_sequence(args.to)
    value = pair(FreeQElement.word(left), FreeQElement.word(right), datum, config.cap)
    body = {"pair": [format_sequence(left), format_sequence(right)], "quantumSide": value.to_dict()}
    ok = True
    if sorted(left) == sorted(right):
        algebra = gdim_corner(right, left, datum, config.cap)
        comparison = value.series.compare(algebra)
        body.update(algebraSide=str(algebra), equalToCap=comparison.cap if comparison.equal else None)
        ok = comparison.equal
    return make_report("pair", config.to_dict(), datum.to_dict(), ok, **body), EXIT_OK if ok else EXIT_VERIFY_FAILED


def emit(report: Dict, config: RunConfig) -> bool:
    writer = ReportWriter()
    if config.output:
        return writer.write(report, config.format, config.output)
    print(writer.render(report, config.format))
    return True


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and emit its report; returns the exit code."""
    args = build_parser().parse_args(argv)
    level = logging.WARNING if args.quiet else logging.DEBUG if args.verbose else logging.INFO
    logging.basicConfig(level=level)

    try:
        config = RunConfig.from_args(args)
    except KLRError as e:
        logger.error(f"Configuration error: {str(e)}")
        emit(make_report(args.command, {}, None, False, error=e.code, message=str(e)), RunConfig())
        return EXIT_BAD_ARGS

    if args.command == "validate":
        report, code = cmd_validate(args, config)
        emit(report, config)
        return code

    datum, error = DatumFileHandler().try_load(args.datum)
    if error is not None:
        emit(make_report(args.command, config.to_dict(), None, False, error=error.code, message=str(error)), config)
        return EXIT_INVALID_DATUM

    handlers = {"gdim": cmd_gdim, "verify": cmd_verify, "character": cmd_character, "pair": cmd_pair}
    try:
        report, code = handlers[args.command](args, datum, config)
    except KLRError as e:
        logger.error(f"{args.command} failed: {str(e)}")
        report = make_report(args.command, config.to_dict(), datum.to_dict(), False, error=e.code, message=str(e))
        code = EXIT_BAD_ARGS
    emit(report, config)
    return code


if __name__ == "__main__":
    sys.exit(main())
