"""Command-line interface for momangle.

This module serves as the entrypoint for the momangle application. Results go to stdout and logs to
stderr, so JSON reports and complex files can be piped.
"""

import argparse
import logging
import sys

from momangle import __description__, __version__
from momangle.complexes import SimplicialPair
from momangle.complexfile import format_complex, write_complex
from momangle.config import CheckName, MomangleConfig
from momangle.corpus import corpus_names, corpus_text, resolve_complex
from momangle.duality import DualityController, Verdict
from momangle.duality.reports import (
    CHECK_ALL,
    classification_document,
    cohomology_document,
    error_document,
    report_document,
)
from momangle.exceptions import BudgetExceededError, ComplexFileError, MomangleError
from momangle.homology import GradedGroups
from momangle.moment_angle import hochster_cohomology, verify_direct_oracle, zk_cohomology_groups
from momangle.polyjoin import JoinSpec, composition_complex, polyhedral_join

# Exit codes
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT_ERROR = 2
EXIT_INTERNAL_ERROR = 6

logger = logging.getLogger(__name__)


def setup_logging(verbose: bool = False) -> None:
    """Set up logging configuration.

    Args:
        verbose: Whether to enable verbose logging.
    """
    log_level = logging.DEBUG if verbose else logging.INFO
    log_format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    logging.basicConfig(level=log_level, format=log_format, stream=sys.stderr)


def parse_args(args: list[str] | None = None) -> argparse.Namespace:
    """Parse command-line arguments.

    Args:
        args: Command-line arguments to parse. If None, sys.argv will be used.

    Returns:
        Parsed arguments.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="Enable verbose logging")
    common.add_argument("--json", action="store_true", help="Print a JSON report instead of a table")
    common.add_argument("--max-m", type=int, help="Largest vertex count to accept (overrides MOMANGLE_MAX_M)")
    common.add_argument("--workers", type=int, help="Processes for per-subset work (overrides MOMANGLE_WORKERS)")

    parser = argparse.ArgumentParser(prog="momangle", description=__description__)
    parser.add_argument("--version", action="version", version=f"momangle {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    cohomology = commands.add_parser(
        "cohomology", parents=[common], help="Bigraded cohomology of Z_K and its Poincaré polynomial"
    )
    cohomology.add_argument("source", help="Complex file, or corpus:NAME")
    cohomology.add_argument(
        "--direct-oracle", action="store_true", help="Also compute H_*(Z_K) from the cellular chain complex"
    )
    cohomology.set_defaults(handler=cmd_cohomology)

    check = commands.add_parser("check", parents=[common], help="Run duality checks")
    check.add_argument("source", help="Complex file, or corpus:NAME")
    check.add_argument(
        "which", choices=[name.value for name in CheckName] + [CHECK_ALL], help="Check to run; all classifies"
    )
    check.add_argument("--dim", type=int, help="Alexander duality dimension (defaults to dim K)")
    check.set_defaults(handler=cmd_check)

    polyjoin = commands.add_parser("polyjoin", parents=[common], help="Build a polyhedral join")
    polyjoin.add_argument("base", help="Base complex on [m]")
    polyjoin.add_argument(
        "pairs",
        nargs="*",
        help="One BIG,SMALL pair per base vertex; with --composition, one complex per base vertex",
    )
    polyjoin.add_argument(
        "--composition", action="store_true", help="Pairs are single complexes K_i with big sides full simplices"
    )
    polyjoin.add_argument("--out", help="Write the complex file here instead of stdout")
    polyjoin.set_defaults(handler=cmd_polyjoin)

    corpus = commands.add_parser("corpus", parents=[common], help="List the corpus or print one complex")
    corpus.add_argument("name", nargs="?", help="Corpus complex to print")
    corpus.set_defaults(handler=cmd_corpus)

    return parser.parse_args(args)


def build_config(parsed_args: argparse.Namespace) -> MomangleConfig:
    """Create the config from environment variables, overridden by command-line arguments."""
    config = MomangleConfig.from_env()
    overrides = {}
    if parsed_args.max_m is not None:
        overrides["max_m"] = parsed_args.max_m
        overrides["direct_max_m"] = min(config.direct_max_m, parsed_args.max_m)
    if parsed_args.workers is not None:
        overrides["workers"] = parsed_args.workers
    if not overrides:
        return config
    return MomangleConfig.model_validate({**config.model_dump(), **overrides})


def format_polynomial(coefficients: list[int]) -> str:
    terms = []
    for degree, c in enumerate(coefficients):
        if c == 0:
            continue
        power = "" if degree == 0 else "t" if degree == 1 else f"t^{degree}"
        terms.append(f"{c}{power}" if c != 1 or not power else power)
    return " + ".join(terms) or "0"


def cmd_cohomology(parsed_args: argparse.Namespace, config: MomangleConfig) -> int:
    K = resolve_complex(parsed_args.source)
    H = hochster_cohomology(K, config)
    direct = None
    if parsed_args.direct_oracle:
        direct = verify_direct_oracle(K, config)

    if parsed_args.json:
        print(cohomology_document(H, parsed_args.source, direct).to_json())
        return EXIT_PASS

    print(f"{'J':<20} {'l':>3}  {'group':<12} {'degree':>6}")
    for row in H.table():
        subset = "{" + ",".join(str(v) for v in row["J"]) + "}"
        print(f"{subset:<20} {row['l']:>3}  {row['group']:<12} {row['total_degree']:>6}")
    coefficients = H.poincare_polynomial()
    print(f"Poincaré polynomial: {format_polynomial(coefficients)}")
    print(f"Coefficients: {coefficients}")
    if direct is not None:
        print("Direct cellular oracle: agrees")
    return EXIT_PASS


def _zk_groups(K, config: MomangleConfig) -> GradedGroups | None:
    try:
        return zk_cohomology_groups(K, config)
    except BudgetExceededError as e:
        logger.warning(f"Report will not include H^*(Z_K): {e}")
        return None


def cmd_check(parsed_args: argparse.Namespace, config: MomangleConfig) -> int:
    K = resolve_complex(parsed_args.source)
    if parsed_args.which == CHECK_ALL:
        classification = DualityController(config).classify(K)
        document = classification_document(classification, parsed_args.source, _zk_groups(K, config))
        reports = classification.reports
        verdict = classification.verdict
    else:
        name = CheckName(parsed_args.which)
        params = {}
        if parsed_args.dim is not None:
            if name == CheckName.ALEXANDER:
                params["dimension"] = parsed_args.dim
            else:
                logger.warning(f"--dim is ignored by the {name.value} check")
        report = DualityController(config, checks=[name]).run(K, name, **params)
        document = report_document(report, parsed_args.source, _zk_groups(K, config))
        reports = {name.value: report}
        verdict = report.verdict

    if parsed_args.json:
        print(document.to_json())
    else:
        for check_name, report in reports.items():
            print(f"{check_name}: {report.verdict.value}")
            for witness in report.witnesses:
                print(f"  {witness}")
            for note in report.notes:
                print(f"  note: {note}")
        if parsed_args.which == CHECK_ALL:
            for note in classification.notes:
                print(f"note: {note}")
            print(f"verdict: {verdict.value}")
    return EXIT_PASS if verdict == Verdict.PASS else EXIT_FAIL


def _split_pair(argument: str) -> tuple[str, str]:
    big, separator, small = argument.rpartition(",")
    if not separator or not big or not small:
        raise ComplexFileError(f"pair {argument!r} must have the form BIG,SMALL")
    return big, small


def cmd_polyjoin(parsed_args: argparse.Namespace, config: MomangleConfig) -> int:
    base = resolve_complex(parsed_args.base)
    if parsed_args.composition:
        result = composition_complex(base, [resolve_complex(source) for source in parsed_args.pairs])
    else:
        pairs = []
        for argument in parsed_args.pairs:
            big, small = _split_pair(argument)
            pairs.append(SimplicialPair(resolve_complex(big), resolve_complex(small)))
        result = polyhedral_join(JoinSpec(base, tuple(pairs)))
    logger.info(f"Polyhedral join has {result.m} vertices and {len(result.facets())} facets")

    if parsed_args.out:
        write_complex(result, parsed_args.out)
        logger.info(f"Wrote {parsed_args.out}")
    else:
        print(format_complex(result), end="")
    return EXIT_PASS


def cmd_corpus(parsed_args: argparse.Namespace, config: MomangleConfig) -> int:
    if parsed_args.name:
        print(corpus_text(parsed_args.name), end="")
        return EXIT_PASS
    for name in corpus_names():
        print(name)
    return EXIT_PASS


def _fail(parsed_args: argparse.Namespace, error: BaseException, exit_code: int) -> int:
    """Print an error document when --json is set and return the exit code."""
    if parsed_args.json:
        check = getattr(parsed_args, "which", None) or parsed_args.command
        source = getattr(parsed_args, "source", None) or getattr(parsed_args, "base", None)
        source = source or getattr(parsed_args, "name", None) or ""
        print(error_document(check, source, error, exit_code).to_json())
    return exit_code


def main(args: list[str] | None = None) -> int:
    """Main entry point for the momangle application.

    Args:
        args: Command-line arguments. If None, sys.argv will be used.

    Returns:
        Exit code: 0 pass, 1 fail or inapplicable, 2 input error, 3 budget exceeded,
        4 oracle mismatch, 5 internal inconsistency between checks, 6 unexpected error.
    """
    parsed_args = parse_args(args)
    setup_logging(parsed_args.verbose)
    try:
        config = build_config(parsed_args)
        logger.debug(
            f"Configuration: max_m={config.max_m}, direct_max_m={config.direct_max_m}, "
            f"iso_max_vertices={config.iso_max_vertices}, workers={config.workers}"
        )
        return parsed_args.handler(parsed_args, config)
    except MomangleError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return _fail(parsed_args, e, e.exit_code)
    except ValueError as e:
        logger.error(f"Configuration error: {e}")
        return _fail(parsed_args, e, EXIT_INPUT_ERROR)
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_FAIL
    except Exception as e:
        logger.exception(f"An unexpected error occurred: {e}")
        return _fail(parsed_args, e, EXIT_INTERNAL_ERROR)


if __name__ == "__main__":
    sys.exit(main())
