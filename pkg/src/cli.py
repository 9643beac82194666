import sys
import random
import argparse
import logging
from typing import List, Optional, Sequence, TextIO, Tuple

from src.core.affine import COLLATZ_PAIR, AffineMap, commutator_constant, power_commutator_closed_form, power_closed
from src.core.collatz import scan_range, trace_orbit
from src.core.rationals import RationalSyntaxError, format_decimal_approx, format_rational, parse_rational
from src.core.rearrange import (
    InconsistentCorrectionError, ShapeError, Verdict, build_report, check_bounds_theorem1
)
from src.core.words import WordSyntaxError, evaluate_closed, evaluate_stepwise, evaluation_trace, parse_word
from src.utils.config_utils import (
    ConfigError, get_logging_config, get_scan_config, get_verify_config, load_system_config
)
from src.utils.report_utils import format_report, format_summary, format_trace, summarize_scan, write_scan_csv
from src.utils.sampling import random_positive_rational, random_theorem1_word

# Set up logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

WORD_ORDER_NOTE = "Words are written in composition order: the leftmost block is applied last."

__all__ = ["run_command", "main", "load_system_config"]


class UsageError(Exception):
    """
    Raised for bad arguments; maps to exit code 2
    """


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational_arg(text: str):
    try:
        return parse_rational(text)
    except RationalSyntaxError as e:
        raise argparse.ArgumentTypeError(str(e))


def _positive_int_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _non_negative_int_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    """
    Create the argument parser with one subcommand per verb
    """
    parser = _Parser(
        prog="collatz-rearrange",
        description="Exact rearrangement of E(n)=n/2, O(n)=(3n+1)/2 composition words. " + WORD_ORDER_NOTE,
    )
    parser.add_argument("--system", help="JSON file binding a generic affine pair (first_map, second_map)")
    parser.add_argument("--config", help="alternative YAML application config")
    parser.add_argument("--log-level", help="logging level (DEBUG, INFO, WARNING, ERROR)")
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)

    trace = commands.add_parser("trace", help="trace the accelerated Collatz orbit of n")
    trace.add_argument("n", type=_positive_int_arg)
    trace.add_argument("--step-cap", type=_positive_int_arg)

    word_eval = commands.add_parser("word-eval", help="evaluate a word stepwise and in closed form")
    word_eval.add_argument("word", help="e.g. \"E^3 O^2 E^1\". " + WORD_ORDER_NOTE)
    word_eval.add_argument("--n", type=_rational_arg, required=True)
    word_eval.add_argument("--trace", action="store_true", help="print the value after each block")

    rearrange = commands.add_parser("rearrange", help="rewrite a word into its normal form plus C")
    rearrange.add_argument("word", help=WORD_ORDER_NOTE)
    rearrange.add_argument("--n", type=_rational_arg)
    rearrange.add_argument("--steps", action="store_true", help="print the iterative swap trace")

    commutator = commands.add_parser("commutator", help="constant commutator [second^a, first^b]")
    commutator.add_argument("--a", type=_positive_int_arg, required=True)
    commutator.add_argument("--b", type=_positive_int_arg, required=True)

    for name, help_text in (("verify", "check the C bounds and both corollaries over a range"),
                            ("scan", "scan a range of orbits to CSV")):
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("--from", dest="lo", type=_positive_int_arg, required=True)
        sub.add_argument("--to", dest="hi", type=_positive_int_arg, required=True)
        sub.add_argument("--jobs", type=_positive_int_arg)
        sub.add_argument("--step-cap", type=_positive_int_arg)
        sub.add_argument("--progress", action="store_true", help="show a progress bar on stderr")
        if name == "scan":
            sub.add_argument("--csv", help="output path (stdout when omitted)")
        else:
            sub.add_argument("--random-words", type=_non_negative_int_arg,
                             help="also check K random E...E words with at least two O-blocks")
            sub.add_argument("--seed", type=int)

    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level_name = args.log_level or get_logging_config(args.config).get("level", "INFO")
    level = logging.getLevelName(str(level_name).upper())
    if not isinstance(level, int):
        raise UsageError(f"unknown log level {level_name!r}")
    logging.getLogger().setLevel(level)


def _resolve_pair(args: argparse.Namespace) -> Tuple[Tuple[AffineMap, AffineMap], Tuple[str, str]]:
    if args.system:
        pair = load_system_config(args.system)
        return pair, (pair[0].label, pair[1].label)
    return COLLATZ_PAIR, ("E", "O")


def _scan_settings(args: argparse.Namespace) -> dict:
    settings = get_scan_config(args.config)
    if args.system:
        logger.warning(f"--system is ignored by '{args.command}', which always uses the Collatz pair")
    if args.lo > args.hi:
        raise UsageError(f"--from {args.lo} is greater than --to {args.hi}")
    return {
        "step_cap": args.step_cap or int(settings["step_cap"]),
        "jobs": args.jobs or int(settings["jobs"]),
        "chunk_size": int(settings["chunk_size"]),
        "show_progress": args.progress or bool(settings["show_progress"]),
    }


def _cmd_trace(args: argparse.Namespace, out: TextIO) -> int:
    if args.system:
        logger.warning("--system is ignored by 'trace', which always uses the Collatz pair")
    step_cap = args.step_cap or int(get_scan_config(args.config)["step_cap"])
    orbit = trace_orbit(args.n, step_cap)
    for line in format_trace(orbit):
        print(line, file=out)
    return EXIT_OK


def _cmd_word_eval(args: argparse.Namespace, out: TextIO) -> int:
    pair, alphabet = _resolve_pair(args)
    word = parse_word(args.word, alphabet)
    stepwise = evaluate_stepwise(word, pair, args.n)
    closed = evaluate_closed(word, pair, args.n)

    print(f"word: {word}", file=out)
    print(f"n: {format_rational(args.n)}", file=out)
    print(f"stepwise: {format_rational(stepwise)}", file=out)
    print(f"closed: {format_rational(closed)}", file=out)
    if args.trace:
        for block, value in evaluation_trace(word, pair, args.n):
            print(f"  after {alphabet[block.letter.value]}^{block.exponent}: {format_rational(value)}", file=out)

    if stepwise != closed:
        logger.error(f"stepwise {stepwise} and closed {closed} disagree for {word}")
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def _cmd_rearrange(args: argparse.Namespace, out: TextIO) -> int:
    pair, alphabet = _resolve_pair(args)
    word = parse_word(args.word, alphabet)

    # C does not depend on n, so without --n any argument gives the same C
    n = args.n if args.n is not None else parse_rational("1")
    report = build_report(word, n, pair)
    for line in format_report(report, show_steps=args.steps, with_value=args.n is not None):
        print(line, file=out)

    if args.n is None:
        return EXIT_OK
    failed = report.bounds_ok is False and report.n > 0
    failed = failed or Verdict.FAILS in (report.corollary1, report.corollary2)
    return EXIT_VERIFICATION_FAILED if failed else EXIT_OK


def _cmd_commutator(args: argparse.Namespace, out: TextIO) -> int:
    (first, second), _ = _resolve_pair(args)
    value = commutator_constant(power_closed(second, args.a), power_closed(first, args.b))
    print(format_rational(value), file=out)

    if not args.system:
        closed = power_commutator_closed_form(args.a, args.b)
        logger.info(f"closed form (3/2)^a(1-2^-b)+2^-b-1 = {format_rational(closed)} "
                    f"({format_decimal_approx(closed)})")
        if closed != value or value <= 0:
            logger.error(f"[O^{args.a},E^{args.b}] = {value} contradicts the closed form {closed}")
            return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def _cmd_scan(args: argparse.Namespace, out: TextIO) -> int:
    settings = _scan_settings(args)
    records = scan_range(args.lo, args.hi, **settings)
    try:
        write_scan_csv(records, args.csv if args.csv else out)
    except OSError as e:
        raise UsageError(f"cannot write CSV to {args.csv}: {e}") from e

    failures = [record.n for record in records if Verdict.FAILS in (record.corollary1, record.corollary2)]
    if failures:
        logger.error(f"corollary failures at n = {failures[:20]}")
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def _verify_random_words(args: argparse.Namespace, out: TextIO) -> int:
    settings = get_verify_config(args.config)
    count = args.random_words if args.random_words is not None else int(settings["random_words"])
    if count <= 0:
        return 0

    seed = args.seed if args.seed is not None else int(settings["seed"])
    rng = random.Random(seed)
    failures = 0
    for _ in range(count):
        word = random_theorem1_word(rng, 2, int(settings["max_blocks"]), int(settings["max_exponent"]))
        n = random_positive_rational(rng)
        try:
            report = check_bounds_theorem1(word, n)
        except InconsistentCorrectionError as e:
            logger.error(f"{word} at n={format_rational(n)}: {e}")
            failures += 1
            continue
        if not report.bounds_ok:
            logger.error(f"bound 0 < C < W fails for {word} at n={format_rational(n)}")
            failures += 1

    print(f"random_words: {count} (seed {seed})", file=out)
    print(f"random_word_failures: {failures}", file=out)
    return failures


def _cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    settings = _scan_settings(args)
    records = scan_range(args.lo, args.hi, **settings)
    stats = summarize_scan(records)
    for line in format_summary(stats):
        print(line, file=out)

    random_failures = _verify_random_words(args, out)
    failed = stats["corollary1_fails"] + stats["corollary2_fails"] + stats["bounds_fails"] + random_failures
    print(f"result: {'fail' if failed else 'pass'}", file=out)
    return EXIT_VERIFICATION_FAILED if failed else EXIT_OK


_COMMANDS = {
    "trace": _cmd_trace,
    "word-eval": _cmd_word_eval,
    "rearrange": _cmd_rearrange,
    "commutator": _cmd_commutator,
    "scan": _cmd_scan,
    "verify": _cmd_verify,
}


def run_command(argv: Sequence[str], out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """
    Run one CLI invocation

    Args:
        argv: Arguments without the program name
        out: Result stream (stdout by default)
        err: Error stream (stderr by default)

    Returns:
        Exit code: 0 success, 1 verification failure, 2 usage or parse error
    """
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()

    try:
        args = parser.parse_args(list(argv))
        if args.command is None:
            raise UsageError("a subcommand is required: " + ", ".join(_COMMANDS))
        _configure_logging(args)
        return _COMMANDS[args.command](args, out)
    except SystemExit as e:
        # --help
        return int(e.code or 0)
    except (UsageError, WordSyntaxError, RationalSyntaxError, ConfigError, ShapeError, ValueError) as e:
        logger.error(f"Usage error: {e}")
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    except InconsistentCorrectionError as e:
        logger.error(f"Verification error: {e}")
        print(f"verification failed: {e}", file=err)
        return EXIT_VERIFICATION_FAILED


def main(argv: Optional[List[str]] = None) -> None:
    """
    Main function
    """
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
