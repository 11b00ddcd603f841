"""
Command-line front end
"""
import argparse
import json
import sys
from typing import List, Optional

import networkx as nx

from .config import ConfigurationManager
from .core.enumeration import canonical_triple
from .core.explorer import ExplorerConfig, FlopExplorer, LoggingProgressReporter
from .core.serialization import parse
from .utils import DotWriter, FileManager, FormatParser, InputValidator, TableWriter, ValidationError, attach_to_log
from .utils.validation import CLASS_FILTERS, PROJECTIVITY_METHODS

logger = attach_to_log(name=__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

TABLE_COLUMNS = ["id", "class", "coordinates", "pattern", "stratum", "symmetric", "orbit_length", "squares"]
GRAPH_FORMATS = ("dot", "json")


def _write(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _diagnostic(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")


def _explorer(args: argparse.Namespace) -> FlopExplorer:
    if args.config:
        config = ExplorerConfig.from_run_config(ConfigurationManager().load_from_file(args.config))
    else:
        config = ExplorerConfig()
    if args.method:
        config.method = args.method
    max_depth = getattr(args, "max_depth", None)
    is_valid, error = InputValidator.validate_depth(max_depth)
    if not is_valid:
        raise ValidationError(error)
    if max_depth is not None:
        config.max_depth = max_depth
    if getattr(args, "all_states", False):
        config.projective_only = False
    if args.verbose:
        config.log_level = "DEBUG" if args.verbose > 1 else "INFO"
    elif args.quiet:
        config.log_level = "ERROR"
    return FlopExplorer(config, reporter=LoggingProgressReporter())


# -- commands ---------------------------------------------------------------

def cmd_build(args: argparse.Namespace) -> int:
    result = _explorer(args).build_reference(args.reference)
    if not result.success:
        _diagnostic("usage", result.error_message)
        return EXIT_USAGE
    if args.output:
        if not FileManager.write_text(result.document + "\n", args.output):
            _diagnostic("io", f"Could not write {args.output}")
            return EXIT_FAILED
        return EXIT_OK
    _write(result.document)
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    result = _explorer(args).enumerate(args.class_filter)
    if not result.success:
        _diagnostic("enumeration", result.error_message)
        return EXIT_FAILED

    rows = result.rows
    if args.triple:
        wanted = canonical_triple(FormatParser.parse_triple(args.triple))
        rows = [row for row in rows if row["class"] == "P" and tuple(row["coordinates"] or ()) == wanted]

    if args.format == "csv":
        _write(TableWriter.to_csv(rows, TABLE_COLUMNS).rstrip("\n"))
        _write(f"total,{len(rows) if args.triple else result.totals['total']}")
        return EXIT_OK

    rows = [{k: list(v) if isinstance(v, tuple) else v for k, v in row.items()} for row in rows]
    _write(json.dumps({"rows": rows, "totals": result.totals, "strata": result.strata,
                       "symmetric": result.symmetric}, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_count_cones(args: argparse.Namespace) -> int:
    result = _explorer(args).count_cones()
    if not result.success:
        _diagnostic("census", result.error_message)
        return EXIT_FAILED
    if args.format == "json":
        census = result.census
        _write(json.dumps({"total": census.total, "by_class": census.by_class,
                           "orbits": {k: {str(n): c for n, c in v.items()} for k, v in census.orbits.items()},
                           "symmetric": census.symmetric}, indent=2, sort_keys=True))
    else:
        _write(result.summary())
    return EXIT_OK


def cmd_secondary_fan(args: argparse.Namespace) -> int:
    result = _explorer(args).secondary_fan()
    if not result.success:
        _diagnostic("graph", result.error_message)
        return EXIT_FAILED
    _write(f"{len(result.sizes)} components, sizes {result.sizes}")
    for size, tally in zip(result.sizes, result.tallies):
        parts = ", ".join(f"{count} classes x {mult}" for mult, count in tally.items())
        _write(f"  {size}: {parts}")
    return EXIT_OK


def cmd_flop_graph(args: argparse.Namespace) -> int:
    output_format = args.format or FileManager.format_for_path(args.output, default="dot")
    is_valid, error = InputValidator.validate_format(output_format, GRAPH_FORMATS)
    if not is_valid:
        _diagnostic("usage", error)
        return EXIT_USAGE

    result = _explorer(args).flop_graph()
    if not result.success:
        _diagnostic("graph", result.error_message)
        return EXIT_FAILED
    flop_graph = result.flop_graph
    graph = nx.relabel_nodes(flop_graph.graph, flop_graph.node_ids(), copy=True)
    if output_format == "dot":
        text = DotWriter.to_dot(graph, name="mori_fan")
    else:
        text = json.dumps(nx.node_link_data(graph), indent=2, sort_keys=True)

    if args.output:
        if not FileManager.write_text(text if text.endswith("\n") else text + "\n", args.output):
            _diagnostic("io", f"Could not write {args.output}")
            return EXIT_FAILED
        return EXIT_OK
    _write(text)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    try:
        if args.document == "-":
            text = sys.stdin.read()
        else:
            with open(args.document, encoding="utf-8") as f:
                text = f.read()
    except OSError as e:
        _diagnostic("io", str(e))
        return EXIT_USAGE
    try:
        state = parse(text)
    except ValidationError as e:
        _diagnostic("document", str(e))
        return EXIT_USAGE

    result = _explorer(args).check(state)
    report = {
        "class": result.class_tag,
        "criterion": result.criterion,
        "lp": result.lp,
        "agree": result.agrees,
        "problems": result.problems,
    }
    if result.certificate is not None:
        report["certificate"] = {
            "source": result.certificate.source,
            "coefficients": [{v: str(k) for v, k in sorted(f.items())} for f in result.certificate.coefficients],
        }
    _write(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK if result.success else EXIT_FAILED


def cmd_verify(args: argparse.Namespace) -> int:
    result = _explorer(args).verify(include_counts=not args.quick)
    for check in result.checks:
        status = "ok" if check.passed else "FAILED"
        _write(f"{status:6} {check.name}" + (f": {check.detail}" if check.detail else ""))
    if not result.success:
        _diagnostic("verification", f"{len(result.failures)} checks failed")
        return EXIT_FAILED
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def _class_filter(value: str) -> str:
    is_valid, error = InputValidator.validate_class_filter(value)
    if not is_valid:
        raise argparse.ArgumentTypeError(error)
    return value


def _triple(value: str) -> str:
    is_valid, error = InputValidator.validate_triple(value)
    if not is_valid:
        raise argparse.ArgumentTypeError(error)
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="More log output (repeat for debug)")
    common.add_argument("-q", "--quiet", action="store_true", help="Only log errors")
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--method", choices=PROJECTIVITY_METHODS, help="Projectivity decision route")

    parser = argparse.ArgumentParser(prog="dnvflops",
                                     description="Enumerate flops and models of a degree 2 K3 degeneration")
    subparsers = parser.add_subparsers(dest="command", required=True)

    build = subparsers.add_parser("build", parents=[common], help="Emit a reference state document")
    build.add_argument("reference", choices=("YP", "YT"))
    build.add_argument("-o", "--output", help="Write the document to a file")
    build.set_defaults(func=cmd_build)

    enumerate_ = subparsers.add_parser("enumerate", parents=[common], help="Table of isomorphism classes")
    enumerate_.add_argument("--class", dest="class_filter", type=_class_filter, default="both",
                            help=f"One of {', '.join(CLASS_FILTERS)}")
    enumerate_.add_argument("--projective-only", dest="all_states", action="store_false",
                            help="Keep projective states only (default)")
    enumerate_.add_argument("--all", dest="all_states", action="store_true",
                            help="Keep non-projective states too")
    enumerate_.add_argument("--max-depth", type=int, help="Stop after this many flops")
    enumerate_.add_argument("--format", choices=("json", "csv"), default="json")
    enumerate_.add_argument("--triple", type=_triple, help="Only P rows in the orbit of this triple, e.g. '0,0,0'")
    enumerate_.set_defaults(func=cmd_enumerate, all_states=False)

    cones = subparsers.add_parser("count-cones", parents=[common], help="Maximal cones of the Mori fan")
    cones.add_argument("--format", choices=("text", "json"), default="text")
    cones.set_defaults(func=cmd_count_cones)

    fan = subparsers.add_parser("secondary-fan", parents=[common], help="Components of the secondary fan")
    fan.set_defaults(func=cmd_secondary_fan)

    graph = subparsers.add_parser("flop-graph", parents=[common], help="Emit the labelled flop graph")
    graph.add_argument("--format", choices=GRAPH_FORMATS, help="Output format (default: from --output, else dot)")
    graph.add_argument("-o", "--output", help="Write the graph to a file")
    graph.set_defaults(func=cmd_flop_graph)

    check = subparsers.add_parser("check", parents=[common], help="Decide projectivity of a state document")
    check.add_argument("document", help="State document path, or - for standard input")
    check.set_defaults(func=cmd_check)

    verify = subparsers.add_parser("verify", parents=[common], help="Run the invariant and count checks")
    verify.add_argument("--quick", action="store_true", help="Skip the full enumerations")
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logger.debug(f"Running {args.command}")
    try:
        return int(args.func(args))
    except (ValidationError, FileNotFoundError) as e:
        _diagnostic(type(e).__name__, str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
