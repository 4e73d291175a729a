"""The command line interface."""

import json
import logging
import sys
from argparse import ArgumentParser, ArgumentTypeError, Namespace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import version
from .algebra import read_matrix, write_matrix
from .conditions import GENERATORS, WordPattern, check_word_condition
from .config import CliConfig, ConfigBuilder
from .errors import GinvError, MalformedMatrix
from .inverse import InverseKind, WitnessOverflow, classify, invert
from .theorems import THEOREMS, SuiteReport, TrialReport, digest, render, replay_trial, run_fixtures, run_suite
from .theorems.fixtures import FIXTURES, run_fixture

logger = logging.getLogger(__name__)

LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"
MAX_GENERATED_ORDER = 8
MAX_GENERATED_K = 4


def configure(attrs: Namespace) -> CliConfig:
    """Creates a CliConfig from defaults, the optional config file and the command line.

    Args:
        attrs: The namespace object containing parsed command-line arguments.

    Returns:
        A CliConfig object.
    """
    builder = ConfigBuilder().with_defaults()
    if attrs.config is not None:
        builder = builder.with_config(attrs.config)
    return builder.with_args(vars(attrs)).build()


def setup_logging(verbosity: int) -> None:
    """Sends log records to stderr at WARNING, INFO (-v) or DEBUG (-vv)."""
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def emit(text: str, output: Optional[Path]) -> None:
    """Writes text to the output path, or to stdout when there is none."""
    if output is None:
        sys.stdout.write(text)
        return
    output.write_text(text, encoding="utf-8")
    logger.info("wrote %s", output)


def dump(document: Dict[str, Any]) -> str:
    """Serializes a JSON document the way every command prints it."""
    return json.dumps(document, indent=2) + "\n"


def expectation(arg: str) -> Tuple[str, bool]:
    """Parses a FLAG=BOOL argument of 'classify --expect'."""
    flag, sep, value = arg.partition("=")
    if not sep or not flag:
        raise ArgumentTypeError(f"expected FLAG=BOOL, got '{arg}'")
    match value.lower():
        case "true" | "1" | "yes":
            return flag, True
        case "false" | "0" | "no":
            return flag, False
        case _:
            raise ArgumentTypeError(f"expected a boolean for {flag}, got '{value}'")


def sizes(arg: str) -> Tuple[int, ...]:
    """Parses a comma-separated list of matrix orders."""
    try:
        return tuple(int(part) for part in arg.split(","))
    except ValueError as err:
        raise ArgumentTypeError(f"expected comma-separated integers, got '{arg}'") from err


def cmd_classify(attrs: Namespace) -> int:
    """Handles the 'classify' command.

    Args:
        attrs: The namespace object containing parsed command-line arguments.

    Returns:
        The exit code of the application: 1 if an expectation is not met.
    """
    cfg = configure(attrs)
    a = read_matrix(attrs.input)
    report = classify(a, cfg.tolerances)
    emit(dump({"tolerances": cfg.tolerances.to_dict(), "classification": report.to_dict()}), cfg.output)

    expected: List[Tuple[str, bool]] = attrs.expect or []
    flags = report.flags
    mismatches: List[str] = []
    for flag, value in expected:
        if flag not in flags:
            raise ValueError(f"Unknown flag: {flag} (expected one of {', '.join(flags)})")
        if flags[flag] != value:
            mismatches.append(f"{flag}: expected {str(value).lower()}, got {str(flags[flag]).lower()}")
    for mismatch in mismatches:
        print(mismatch, file=sys.stderr)
    return 1 if mismatches else 0


def cmd_invert(attrs: Namespace) -> int:
    """Handles the 'invert' command.

    Args:
        attrs: The namespace object containing parsed command-line arguments.

    Returns:
        The exit code of the application: 1 if the requested inverse does not exist.
    """
    cfg = configure(attrs)
    kind = InverseKind.from_str(attrs.kind)
    a = read_matrix(attrs.input)
    try:
        witness = invert(a, kind, cfg.tolerances)
    except WitnessOverflow as err:
        logger.warning("%s", err)
        witness = err.witness

    document: Dict[str, Any] = {
        "tolerances": cfg.tolerances.to_dict(),
        "kind": str(kind),
        "exists": witness is not None,
    }
    if witness is not None:
        document["inverse"] = witness.to_dict()
    emit(dump(document), cfg.output)
    return 0 if witness is not None else 1


def cmd_check(attrs: Namespace) -> int:
    """Handles the 'check' command.

    Args:
        attrs: The namespace object containing parsed command-line arguments.

    Returns:
        The exit code of the application: 1 if the condition fails.
    """
    cfg = configure(attrs)
    pattern = WordPattern.from_str(attrs.pattern)
    a, b = read_matrix(attrs.a), read_matrix(attrs.b)
    report = check_word_condition(a, b, attrs.k, pattern, cfg.tolerances)
    emit(dump({"tolerances": cfg.tolerances.to_dict(), "condition": report.to_dict()}), cfg.output)
    return 0 if report.holds else 1


def replay(suite: str, seed: int, cfg: CliConfig) -> TrialReport:
    """Re-executes one trial of a suite.

    Raises:
        ValueError: If the suite names no single theorem, or the fixture index is out of range.
    """
    if suite == "fixtures":
        if not 0 <= seed < len(FIXTURES):
            raise ValueError(f"Fixture index must lie in 0..{len(FIXTURES) - 1}, got {seed}")
        return run_fixture(seed, cfg.tolerances)
    if suite == "all":
        raise ValueError("--replay needs a single theorem id or 'fixtures'")
    return replay_trial(suite, seed, cfg.suite, cfg.tolerances)


def cmd_verify(attrs: Namespace) -> int:
    """Handles the 'verify' command.

    Args:
        attrs: The namespace object containing parsed command-line arguments.

    Returns:
        The exit code of the application: 1 unless the suite passed.
    """
    cfg = configure(attrs)

    if attrs.replay is not None:
        trial = replay(attrs.suite, attrs.replay, cfg)
        document = {
            "tolerances": cfg.tolerances.to_dict(),
            "trial": trial.to_dict(),
            "holds": trial.holds,
            "inconclusive": trial.inconclusive,
        }
        emit(dump(document), cfg.output)
        return 0 if trial.holds else 1

    report: SuiteReport
    match attrs.suite:
        case "all":
            report = run_fixtures(cfg.tolerances).merge(run_suite(cfg.suite, cfg.tolerances))
        case "fixtures":
            report = run_fixtures(cfg.tolerances)
        case theorem_id:
            report = run_suite(cfg.suite, cfg.tolerances, [theorem_id])

    emit(render(report, cfg.output_format, cfg.timing), cfg.output)
    if not report.passed:
        logger.warning(
            "%d violations, %d inconclusive in %d trials", report.violations, report.inconclusive, report.trials
        )
    return 0 if report.passed else 1


def cmd_gen(attrs: Namespace) -> int:
    """Handles the 'gen' command.

    Writes a.json, b.json and c.json, as many as the generator returns, and a manifest.json.

    Args:
        attrs: The namespace object containing parsed command-line arguments.

    Returns:
        The exit code of the application.
    """
    cfg = configure(attrs)
    if not 2 <= attrs.n <= MAX_GENERATED_ORDER:
        raise ValueError(f"n must lie in 2..{MAX_GENERATED_ORDER}, got {attrs.n}")
    if not 1 <= attrs.k <= MAX_GENERATED_K:
        raise ValueError(f"k must lie in 1..{MAX_GENERATED_K}, got {attrs.k}")

    rng = np.random.default_rng(cfg.suite.seed)
    matrices = GENERATORS[attrs.generator](attrs.n, attrs.k, rng, cfg.tolerances)

    directory: Path = attrs.directory
    directory.mkdir(parents=True, exist_ok=True)
    files: List[str] = []
    for name, m in zip("abc", matrices):
        file_name = f"{name}.json"
        write_matrix(directory / file_name, m)
        files.append(file_name)

    manifest = {
        "generator": attrs.generator,
        "seed": cfg.suite.seed,
        "n": attrs.n,
        "k": attrs.k,
        "files": files,
        "digest": digest(*matrices),
        "tolerances": cfg.tolerances.to_dict(),
    }
    (directory / "manifest.json").write_text(dump(manifest), encoding="utf-8")
    logger.info("wrote %s to %s", ", ".join(files), directory)
    return 0


def common_parser() -> ArgumentParser:
    """Returns the options every subcommand accepts."""
    parser = ArgumentParser(add_help=False)
    parser.add_argument("--config", type=Path, help="JSON configuration file")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log INFO, or DEBUG when repeated")
    tolerances = parser.add_argument_group("tolerances")
    tolerances.add_argument("--tol-rank", type=float, help="relative singular-value threshold for numeric rank")
    tolerances.add_argument("--tol-eig", type=float, help="relative eigenvalue accuracy target")
    tolerances.add_argument("--tol-res", type=float, help="relative residual threshold for identity checks")
    tolerances.add_argument("--tol-unity", type=float, help="root-of-unity matching threshold")
    tolerances.add_argument("--tol-cluster", type=float, help="relative eigenvalue cluster radius")
    tolerances.add_argument("--tol-cond-max", type=float, help="largest accepted similarity condition number")
    tolerances.add_argument("--tol-n-max-unity", type=int, help="largest root-of-unity order searched")
    tolerances.add_argument("--tol-n-oracle", type=int, help="largest exponent tried by brute-force searches")
    return parser


def main(args: Sequence[str] = sys.argv[1:]) -> int:
    """The main entry point for the command-line interface.

    Returns:
        An exit code: 0 on success, 1 on a failed check or violation, 2 on bad input or usage.
    """
    common = common_parser()
    parser = ArgumentParser(prog="ginv", description="Generalized inverses of complex square matrices.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {version.__version__}")
    subparsers = parser.add_subparsers(help="Commands")

    parser_classify = subparsers.add_parser("classify", parents=[common], help="classify a matrix")
    parser_classify.add_argument("-i", "--input", type=Path, required=True, help="matrix file")
    parser_classify.add_argument(
        "--expect", type=expectation, action="append", metavar="FLAG=BOOL", help="exit 1 unless FLAG has this value"
    )
    parser_classify.add_argument("-o", "--output", type=Path, help="write the report here instead of stdout")
    parser_classify.set_defaults(func=cmd_classify)

    parser_invert = subparsers.add_parser("invert", parents=[common], help="compute a generalized inverse")
    parser_invert.add_argument("--kind", choices=[str(kind) for kind in InverseKind], default="drazin")
    parser_invert.add_argument("-i", "--input", type=Path, required=True, help="matrix file")
    parser_invert.add_argument("-o", "--output", type=Path, help="write the report here instead of stdout")
    parser_invert.set_defaults(func=cmd_invert)

    parser_check = subparsers.add_parser("check", parents=[common], help="check a word condition on a pair")
    parser_check.add_argument("--pattern", choices=[str(pattern) for pattern in WordPattern], required=True)
    parser_check.add_argument("--k", type=int, required=True, help="word length")
    parser_check.add_argument("-a", type=Path, required=True, help="matrix file of a")
    parser_check.add_argument("-b", type=Path, required=True, help="matrix file of b")
    parser_check.add_argument("-o", "--output", type=Path, help="write the report here instead of stdout")
    parser_check.set_defaults(func=cmd_check)

    parser_verify = subparsers.add_parser("verify", parents=[common], help="run fixtures and the property suite")
    parser_verify.add_argument(
        "--suite", choices=["all", "fixtures", *sorted(THEOREMS)], default="all", help="what to run"
    )
    parser_verify.add_argument("--trials", type=int, help="trials per theorem")
    parser_verify.add_argument("--seed", type=int, help="global seed")
    parser_verify.add_argument("--sizes", type=sizes, help="comma-separated matrix orders, e.g. 2,3,4")
    parser_verify.add_argument("--k-max", type=int, help="largest word length")
    parser_verify.add_argument("--jobs", type=int, help="worker processes")
    parser_verify.add_argument("--format", choices=["json", "markdown"], help="report format")
    parser_verify.add_argument("--timing", action="store_true", help="include wall time in the report")
    parser_verify.add_argument("--replay", type=int, metavar="SEED", help="re-execute the trial with this seed")
    parser_verify.add_argument("-o", "--output", type=Path, help="write the report here instead of stdout")
    parser_verify.set_defaults(func=cmd_verify)

    parser_gen = subparsers.add_parser("gen", parents=[common], help="generate a structured instance")
    parser_gen.add_argument("--generator", choices=sorted(GENERATORS), required=True)
    parser_gen.add_argument("--seed", type=int, help="seed of the generator")
    parser_gen.add_argument("-n", type=int, default=4, help="matrix order, for generators that take one")
    parser_gen.add_argument("-k", type=int, default=2, help="word length, for generators that take one")
    parser_gen.add_argument("-o", dest="directory", type=Path, default=Path("."), help="output directory")
    parser_gen.set_defaults(func=cmd_gen)

    parsed = parser.parse_args(args)

    if not hasattr(parsed, "func"):
        parser.print_help()
        return 2

    if not callable(parsed.func):
        raise TypeError("Expected callable")

    setup_logging(parsed.verbose)

    try:
        ret = parsed.func(parsed)
    except (MalformedMatrix, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except GinvError as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return 1

    if not isinstance(ret, int):
        raise TypeError("Expected int")

    return ret
