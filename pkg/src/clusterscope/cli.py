#!/usr/bin/env python3
"""Command line front end for clusterscope.

Every subcommand reads a quiver (or surface descriptor, or certificate) from a
file or from stdin, runs one operation and reports the result. The exit
status is 0 on success, 1 for a negative mathematical outcome, 2 for usage and
input errors and 3 when a search budget ran out before a decision.
"""

# pylint: disable=too-many-lines

### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
from argparse import ArgumentParser, ArgumentTypeError, Namespace
from fractions import Fraction
import logging
import sys
from typing import Any, Callable, Dict, List, Sequence, TextIO

# Installed
import dataclassy
import orjson
from tqdm import tqdm

# Package
from clusterscope import __version__

# Local
from .algebraic import (
    ClusterPointError,
    DegenerateHom,
    Inapplicable,
    JacobianVerdict,
    PointAssignment,
    PreconditionError,
    acyclic_presentation,
    build_degenerate_hom,
    evaluate_cluster_point,
    isolated_jacobian_check,
    kernel_path_witness,
)
from .banff import BanffSearch, FailureReport
from .canonical import canonical_form
from .catalog import (
    LOCALLY_ACYCLIC_GALLERY,
    NOT_LOCALLY_ACYCLIC_GALLERY,
    UnknownCatalogEntry,
    catalog_entry,
    catalog_names,
)
from .certificate import (
    BanffCertificate,
    format_certificate,
    verify_certificate_text,
)
from .config import SearchBudget, Strategy, threads_from_env
from .const import (
    DEFAULT_CLASS_BUDGET,
    DEFAULT_DEPTH_BUDGET,
    DEFAULT_NODE_BUDGET,
    CoverMode,
    ExitStatus,
    FailureReason,
    StopPredicate,
    Verdict,
)
from .explore import (
    MutationExplorer,
    SearchOutcome,
    find_acyclic_seed,
    find_covering_pair_seed,
)
from .formats import (
    SurfaceFormatError,
    format_quiver,
    format_surface,
    format_vertex_list,
    parse_quiver,
    parse_surface,
    parse_vertex_list,
)
from .laurent import format_laurent
from .linalg import exchange_rank, is_full_rank
from .quiver import IceQuiver, QuiverError, mutate_path
from .seed import (
    SeedError,
    enumerate_cluster_variables,
    initial_seed,
    laurent_check,
)
from .structure import covering_pairs, sinks, sources, structural_class
from .surface import LocalAcyclicity, SurfaceError, classify_surface, surface_rank

### CONSTANTS
### ============================================================================
PACKAGE_LOGGER = logging.getLogger("clusterscope")

handler = logging.StreamHandler()
handler.setFormatter(
    logging.Formatter(
        fmt="%(levelname)8s:%(filename)s:%(lineno)d:%(message)s",
        datefmt="%Y-%m-%d:%H:%M:%S",
    )
)
PACKAGE_LOGGER.addHandler(handler)

JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS


### CLASSES
### ============================================================================
class UsageError(ValueError):
    """Raised when command line arguments are invalid."""


@dataclassy.dataclass(slots=True)
class CommandResult:
    """Outcome of one command.

    Attributes:
        exit_status: process exit status
        report: text shown to the user
        payload: machine readable result, rendered by `--json`
        payload_path: file the payload was written to, if any
    """

    exit_status: int
    report: str = ""
    payload: Dict[str, Any] = dataclassy.factory(dict)
    payload_path: str | None = None


class _ArgumentParser(ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


### FUNCTIONS
### ============================================================================
def dispatch(argv: Sequence[str], stdin: TextIO | None = None) -> CommandResult:
    """Run the command described by `argv` and return its result.

    Args:
        argv: arguments, without the program name
        stdin: stream read for inputs given as `-` or omitted, defaults to `sys.stdin`
    """
    parser = get_argument_parser()
    try:
        opts = parser.parse_args(list(argv))
    except UsageError as error:
        return CommandResult(ExitStatus.USAGE, str(error))
    except SystemExit as exit_:
        # --help and --version print and exit
        code = exit_.code if isinstance(exit_.code, int) else 0
        return CommandResult(code)
    if not getattr(opts, "handler", None):
        return CommandResult(ExitStatus.USAGE, parser.format_usage())

    file_handler = _configure_logging(opts)
    try:
        result = _run(opts, stdin or sys.stdin)
    finally:
        if file_handler is not None:
            PACKAGE_LOGGER.removeHandler(file_handler)
            file_handler.close()

    if opts.payload_file:
        try:
            with open(opts.payload_file, "wb") as f:
                f.write(orjson.dumps(result.payload, option=JSON_OPTIONS))
            result.payload_path = opts.payload_file
        except OSError as error:
            PACKAGE_LOGGER.warning(f"Unable to write payload file: {error!r}")
    if opts.json:
        result.report = orjson.dumps(result.payload, option=JSON_OPTIONS).decode("utf8")
    return result


def get_argument_parser() -> ArgumentParser:
    """Build the argument parser with every subcommand."""
    common = ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON payload")
    common.add_argument("--payload-file", default=None, help="also write the JSON payload here")
    common.add_argument(
        "--threads",
        type=_positive_int,
        default=threads_from_env(),
        help="worker threads for class exploration (default: $CLUSTERSCOPE_THREADS or 1)",
    )
    common.add_argument("--verbose", action="store_true", help="more verbose output")
    common.add_argument("--debug", action="store_true", help="print debugging information")
    common.add_argument("--log-file", default=None, help="output logging to a file")

    budgets = ArgumentParser(add_help=False)
    budgets.add_argument(
        "--class-budget",
        "--budget",
        type=_positive_int,
        default=DEFAULT_CLASS_BUDGET,
        help="maximum number of quivers per mutation class",
    )
    budgets.add_argument(
        "--depth-budget",
        "--depth",
        type=_positive_int,
        default=DEFAULT_DEPTH_BUDGET,
        help="maximum mutation depth",
    )

    parser = _ArgumentParser(
        prog="clusterscope", description="Exact computations with skew-symmetric cluster algebras"
    )
    parser.add_argument("-v", "--version", action="version", version=__version__)
    commands = parser.add_subparsers(title="commands", dest="command", parser_class=_ArgumentParser)

    def command(name: str, run: Callable, help_: str, *parents: ArgumentParser) -> Any:
        sub = commands.add_parser(name, help=help_, parents=[common, *parents])
        sub.set_defaults(handler=run)
        return sub

    sub = command("mutate", _cmd_mutate, "mutate a quiver along a path")
    sub.add_argument("file", nargs="?", default="-")
    sub.add_argument("--path", required=True, help="comma separated 1-based vertices")
    sub.add_argument("--out", default=None, help="write the mutated quiver here")

    sub = command("class", _cmd_class, "enumerate the mutation class", budgets)
    sub.add_argument("file", nargs="?", default="-")

    sub = command("find-acyclic", _cmd_find_acyclic, "search for an acyclic quiver", budgets)
    sub.add_argument("file", nargs="?", default="-")

    sub = command("covering-pairs", _cmd_covering_pairs, "list covering pairs", budgets)
    sub.add_argument("file", nargs="?", default="-")
    sub.add_argument("--search", action="store_true", help="search the mutation class")

    sub = command("banff", _cmd_banff, "run the Banff algorithm", budgets)
    sub.add_argument("file", nargs="?", default="-")
    sub.add_argument(
        "--stop", choices=[p.value for p in StopPredicate], default=StopPredicate.ACYCLIC.value
    )
    sub.add_argument("--node-budget", type=_positive_int, default=DEFAULT_NODE_BUDGET)
    sub.add_argument("--seed-level", action="store_true", help="record clusters in the certificate")
    sub.add_argument("--reduced", action="store_true", help="delete instead of freezing")
    sub.add_argument(
        "--knowledge", action="append", default=[], help="known locally acyclic quiver (.qvr)"
    )
    sub.add_argument("--out", default=None, help="write the certificate here")
    sub.add_argument(
        "--strategy-order", choices=["ascending", "descending", "shuffled"], default="descending"
    )
    sub.add_argument("--pair-order", choices=["canonical", "reverse"], default="canonical")
    sub.add_argument("--strategy-seed", type=int, default=0)
    sub.add_argument("--no-backtrack", action="store_true")

    sub = command("banff-verify", _cmd_banff_verify, "verify a Banff certificate")
    sub.add_argument("file", nargs="?", default="-")
    sub.add_argument(
        "--knowledge", action="append", default=[], help="known locally acyclic quiver (.qvr)"
    )

    sub = command("surface", _cmd_surface, "rank and classification of marked surfaces")
    sub.add_argument("action", choices=["rank", "classify"])
    sub.add_argument("file", nargs="?", default="-")

    sub = command("catalog", _cmd_catalog, "print catalog quivers")
    sub.add_argument("name", nargs="?", default=None)
    sub.add_argument("--list", action="store_true", help="list catalog names")
    sub.add_argument("--surface", action="store_true", help="print the surface descriptor")
    sub.add_argument("--out", default=None, help="write the quiver here")

    sub = command("present", _cmd_present, "presentation of an acyclic cluster algebra")
    sub.add_argument("file", nargs="?", default="-")

    sub = command("jacobian-check", _cmd_jacobian_check, "rank check for an isolated seed")
    sub.add_argument("file", nargs="?", default="-")
    sub.add_argument("--frozen", default="", help="frozen values as v=r,... (default 1)")

    sub = command("degenerate-hom", _cmd_degenerate_hom, "build a degenerate homomorphism", budgets)
    sub.add_argument("file", nargs="?", default="-")

    sub = command("evaluate", _cmd_evaluate, "follow the exchange recurrence at a point")
    sub.add_argument("file", nargs="?", default="-")
    sub.add_argument("--start", default="", help="start values as v=r,... (default 1)")
    sub.add_argument("--path", default="", help="comma separated 1-based vertices")

    sub = command("kernel-path", _cmd_kernel_path, "directed cycle of vertices sent to zero")
    sub.add_argument("file", nargs="?", default="-")
    sub.add_argument("--values", default="", help="values as v=r,... (default 0)")

    sub = command("laurent-check", _cmd_laurent_check, "check the Laurent phenomenon")
    sub.add_argument("file", nargs="?", default="-")
    sub.add_argument("--depth", type=_non_negative_int, default=4)
    sub.add_argument("--variables", action="store_true", help="also list cluster variables")

    sub = command("info", _cmd_info, "structural summary of a quiver")
    sub.add_argument("file", nargs="?", default="-")
    return parser


### PRIVATE
### ============================================================================
## Plumbing
## -----------------------------------------------------------------------------
def _run(opts: Namespace, stdin: TextIO) -> CommandResult:
    try:
        return opts.handler(opts, stdin)
    except (
        UsageError, QuiverError, SurfaceFormatError, SurfaceError, UnknownCatalogEntry
    ) as error:
        message = error.args[0] if isinstance(error, UnknownCatalogEntry) else str(error)
        PACKAGE_LOGGER.error(message)
        return CommandResult(ExitStatus.USAGE, f"error: {message}", {"error": message})
    except OSError as error:
        PACKAGE_LOGGER.error(f"Unable to read input: {error!r}")
        return CommandResult(ExitStatus.USAGE, f"error: {error}", {"error": str(error)})
    except (PreconditionError, ClusterPointError, SeedError) as error:
        payload: Dict[str, Any] = {"error": str(error)}
        if isinstance(error, ClusterPointError):
            payload.update(step=error.step + 1, vertex=error.vertex + 1)
        return CommandResult(ExitStatus.NEGATIVE, f"error: {error}", payload)


def _configure_logging(opts: Namespace) -> logging.Handler | None:
    PACKAGE_LOGGER.setLevel(logging.ERROR)
    if opts.verbose:
        PACKAGE_LOGGER.setLevel(logging.INFO)
    if opts.debug:
        PACKAGE_LOGGER.setLevel(logging.DEBUG)
    if not opts.log_file:
        return None
    try:
        with open(opts.log_file, "w", encoding="utf8"):
            pass
        fh = logging.FileHandler(opts.log_file)
        fh.setFormatter(
            logging.Formatter(
                "%(asctime)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s"
            )
        )
        PACKAGE_LOGGER.addHandler(fh)
    except Exception as error:  # pylint: disable=broad-exception-caught
        PACKAGE_LOGGER.warning(f"Unable to write to log file: {error!r}")
        return None
    return fh


def _read_text(path: str | None, stdin: TextIO) -> str:
    if path in (None, "-"):
        return stdin.read()
    with open(path, encoding="utf8") as f:
        return f.read()


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf8") as f:
        f.write(text)
    return


def _read_quiver(opts: Namespace, stdin: TextIO) -> tuple[str, IceQuiver]:
    return parse_quiver(_read_text(opts.file, stdin))


def _positive_int(text: str) -> int:
    value = _non_negative_int(text)
    if value == 0:
        raise ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


def _vertices(text: str) -> List[int]:
    try:
        return parse_vertex_list(text)
    except ValueError as error:
        raise UsageError(str(error)) from None


def _assignments(text: str) -> Dict[int, Fraction]:
    """Parse `v=r,...` with 1-based vertices and rational values."""
    values: Dict[int, Fraction] = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        vertex, sep, value = item.partition("=")
        try:
            v = int(vertex)
            if not sep or v < 1:
                raise ValueError(item)
            values[v - 1] = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"invalid assignment {item!r}, expected v=r") from None
    return values


def _point(q: IceQuiver, text: str, default: int) -> PointAssignment:
    mapping = _assignments(text)
    for v in mapping:
        if v >= q.n:
            raise UsageError(f"vertex {v + 1} out of range 1..{q.n}")
    return PointAssignment.from_mapping(q.n, mapping, default)


def _budget(opts: Namespace) -> SearchBudget:
    return SearchBudget(
        max_members=opts.class_budget,
        max_depth=opts.depth_budget,
        max_nodes=getattr(opts, "node_budget", DEFAULT_NODE_BUDGET),
    )


def _pairs(pairs: Sequence[tuple[int, int]]) -> List[List[int]]:
    return [[a + 1, b + 1] for a, b in pairs]


def _path(path: Sequence[int] | None) -> List[int]:
    return [k + 1 for k in path or ()]


def _fraction(value: Fraction) -> str:
    return str(value)


def _search_status(outcome: SearchOutcome) -> ExitStatus:
    return {
        Verdict.FOUND: ExitStatus.OK,
        Verdict.PROVEN_ABSENT: ExitStatus.NEGATIVE,
        Verdict.BUDGET_EXHAUSTED: ExitStatus.INDETERMINATE,
    }[outcome.verdict]


def _knowledge(paths: Sequence[str], stdin: TextIO) -> List[bytes]:
    return [canonical_form(parse_quiver(_read_text(path, stdin))[1]) for path in paths]


## Commands
## -----------------------------------------------------------------------------
def _cmd_mutate(opts: Namespace, stdin: TextIO) -> CommandResult:
    name, q = _read_quiver(opts, stdin)
    path = _vertices(opts.path)
    text = format_quiver(mutate_path(q, path), name)
    if opts.out:
        _write_text(opts.out, text)
    payload = {"name": name, "path": _path(path), "quiver": text}
    return CommandResult(ExitStatus.OK, text.rstrip("\n"), payload)


def _cmd_class(opts: Namespace, stdin: TextIO) -> CommandResult:
    _, q = _read_quiver(opts, stdin)
    explorer = MutationExplorer(q, _budget(opts), threads=opts.threads, name="cli")
    members = list(tqdm(explorer.walk(), unit="quiver", disable=not sys.stdout.isatty()))
    payload = {
        "size": len(members),
        "complete": explorer.complete,
        "depth": explorer.stats.depth_reached,
        "members": [{"path": _path(m.path), "form": m.key.hex()} for m in members],
    }
    state = "complete" if explorer.complete else "incomplete (budget exhausted)"
    report = f"mutation class: {len(members)} quivers, {state}, depth {payload['depth']}"
    status = ExitStatus.OK if explorer.complete else ExitStatus.INDETERMINATE
    return CommandResult(status, report, payload)


def _cmd_find_acyclic(opts: Namespace, stdin: TextIO) -> CommandResult:
    name, q = _read_quiver(opts, stdin)
    outcome = find_acyclic_seed(q, _budget(opts), threads=opts.threads)
    return _search_result(name, outcome, "acyclic quiver")


def _cmd_covering_pairs(opts: Namespace, stdin: TextIO) -> CommandResult:
    name, q = _read_quiver(opts, stdin)
    if opts.search:
        outcome = find_covering_pair_seed(q, _budget(opts), threads=opts.threads)
        return _search_result(name, outcome, "quiver with a covering pair")
    pairs = covering_pairs(q)
    report = "\n".join(f"{a + 1} {b + 1}" for a, b in pairs) or "no covering pairs"
    return CommandResult(ExitStatus.OK, report, {"name": name, "pairs": _pairs(pairs)})


def _search_result(name: str, outcome: SearchOutcome, what: str) -> CommandResult:
    payload: Dict[str, Any] = {
        "name": name,
        "verdict": outcome.verdict.value,
        "members": outcome.stats.nodes_expanded,
        "depth": outcome.stats.depth_reached,
    }
    if outcome.found:
        assert outcome.quiver is not None
        payload["path"] = _path(outcome.path)
        payload["quiver"] = format_quiver(outcome.quiver, name)
        if outcome.pair is not None:
            payload["pair"] = _pairs([outcome.pair])[0]
        report = f"found {what} after path [{format_vertex_list(outcome.path or ())}]"
        if outcome.pair is not None:
            report += f" with covering pair ({outcome.pair[0] + 1}, {outcome.pair[1] + 1})"
        report += "\n" + payload["quiver"].rstrip("\n")
    elif outcome.verdict is Verdict.PROVEN_ABSENT:
        size = outcome.stats.nodes_expanded
        report = f"no {what} in the complete mutation class ({size} quivers)"
    else:
        report = (
            f"budget exhausted after {outcome.stats.nodes_expanded} quivers"
            f" at depth {outcome.stats.depth_reached}; no {what} found"
        )
    return CommandResult(_search_status(outcome), report, payload)


def _cmd_banff(opts: Namespace, stdin: TextIO) -> CommandResult:
    name, q = _read_quiver(opts, stdin)
    strategy = Strategy(
        vertex_order=opts.strategy_order,
        pair_order=opts.pair_order,
        backtrack=not opts.no_backtrack,
        seed=opts.strategy_seed,
    )
    stop = StopPredicate(opts.stop)
    if opts.reduced and (opts.seed_level or stop is not StopPredicate.ACYCLIC):
        raise UsageError("--reduced only supports --stop acyclic without --seed-level")
    search = BanffSearch(
        stop,
        _budget(opts),
        strategy,
        mode=CoverMode.DELETE if opts.reduced else CoverMode.FREEZE,
        knowledge=_knowledge(opts.knowledge, stdin),
        seed_level=opts.seed_level,
        threads=opts.threads,
        name="cli",
    )
    result = search.run(q, name)
    if isinstance(result, FailureReport):
        return _banff_failure(name, result)
    return _banff_success(opts, result)


def _banff_success(opts: Namespace, certificate: BanffCertificate) -> CommandResult:
    text = format_certificate(certificate)
    summary = (
        f"# certificate for {certificate.name}: {len(certificate.branches)} branches,"
        f" {len(certificate.leaves)} leaves"
    )
    payload: Dict[str, Any] = {
        "name": certificate.name,
        "outcome": "certificate",
        "mode": certificate.mode.value,
        "stop": certificate.stop.value,
        "branches": len(certificate.branches),
        "leaves": len(certificate.leaves),
        "certificate": text,
    }
    if opts.out:
        _write_text(opts.out, text)
        return CommandResult(ExitStatus.OK, f"{summary}, written to {opts.out}", payload)
    return CommandResult(ExitStatus.OK, f"{summary}\n{text.rstrip()}", payload)


def _banff_failure(name: str, failure: FailureReport) -> CommandResult:
    payload: Dict[str, Any] = {
        "name": name,
        "outcome": "failure",
        "reason": failure.reason.value,
        "where": failure.where,
        "frontier": failure.frontier,
        "members_visited": failure.stats.nodes_expanded,
    }
    if failure.reason is FailureReason.NO_COVERING_PAIR:
        assert failure.witness is not None
        payload["witness_size"] = failure.witness.size
        report = (
            f"NoCoveringPairInCompleteClass at {failure.where}:"
            f" the mutation class has {failure.witness.size} quivers and none has a covering pair"
        )
        return CommandResult(ExitStatus.NEGATIVE, report, payload)
    return CommandResult(ExitStatus.INDETERMINATE, f"BudgetExhausted: {failure}", payload)


def _cmd_banff_verify(opts: Namespace, stdin: TextIO) -> CommandResult:
    text = _read_text(opts.file, stdin)
    verdict = verify_certificate_text(text, _knowledge(opts.knowledge, stdin))
    payload = {
        "accepted": verdict.accepted,
        "reason": verdict.reason.value if verdict.reason else None,
        "node": verdict.node,
        "detail": verdict.detail,
    }
    status = ExitStatus.OK if verdict.accepted else ExitStatus.NEGATIVE
    return CommandResult(status, str(verdict), payload)


def _cmd_surface(opts: Namespace, stdin: TextIO) -> CommandResult:
    descriptor = parse_surface(_read_text(opts.file, stdin))
    if opts.action == "rank":
        rank = surface_rank(descriptor)
        payload: Dict[str, Any] = {"name": descriptor.name, "rank": rank}
        return CommandResult(ExitStatus.OK, f"{descriptor.name}: rank {rank}", payload)
    classification = classify_surface(descriptor)
    reasons = classification.reasons
    payload = {
        "name": descriptor.name,
        "verdict": classification.verdict.value,
        "components": [
            {"verdict": c.verdict.value, "reason": c.reason} for c in classification.components
        ],
    }
    report = f"{descriptor.name}: {classification.verdict.value} ({', '.join(reasons)})"
    status = {
        LocalAcyclicity.LOCALLY_ACYCLIC: ExitStatus.OK,
        LocalAcyclicity.NOT_LOCALLY_ACYCLIC: ExitStatus.NEGATIVE,
        LocalAcyclicity.UNKNOWN: ExitStatus.OK,
    }[classification.verdict]
    return CommandResult(status, report, payload)


def _cmd_catalog(opts: Namespace, stdin: TextIO) -> CommandResult:
    if opts.list or opts.name is None:
        names = catalog_names()
        lines = [f"{name:12} {catalog_entry(name).description}" for name in names]
        payload = {
            "names": names,
            "locally_acyclic": list(LOCALLY_ACYCLIC_GALLERY),
            "not_locally_acyclic": list(NOT_LOCALLY_ACYCLIC_GALLERY),
        }
        return CommandResult(ExitStatus.OK, "\n".join(lines), payload)
    entry = catalog_entry(opts.name)
    if opts.surface:
        if entry.surface is None:
            raise UsageError(f"catalog quiver {entry.name!r} has no surface")
        text = format_surface(entry.surface)
    else:
        text = format_quiver(entry.quiver, entry.name)
    if opts.out:
        _write_text(opts.out, text)
    payload = {"name": entry.name, "description": entry.description, "text": text}
    return CommandResult(ExitStatus.OK, text.rstrip("\n"), payload)


def _cmd_present(opts: Namespace, stdin: TextIO) -> CommandResult:
    name, q = _read_quiver(opts, stdin)
    presentation = acyclic_presentation(initial_seed(q))
    payload = {
        "name": name,
        "generators": list(presentation.generators),
        "relations": [str(relation) for relation in presentation.relations],
    }
    return CommandResult(ExitStatus.OK, str(presentation), payload)


def _cmd_jacobian_check(opts: Namespace, stdin: TextIO) -> CommandResult:
    _, q = _read_quiver(opts, stdin)
    point = _point(q, opts.frozen, 1)
    check = isolated_jacobian_check(initial_seed(q), point)
    payload = {
        "verdict": check.verdict.value,
        "jacobian_rank": check.jacobian_rank,
        "exchange_rank": check.exchange_rank,
    }
    if check.verdict is JacobianVerdict.VACUOUS:
        report = "vacuous: some mutable vertex has no arrows, so no residue point exists"
    else:
        report = (
            f"{check.verdict.value}: jacobian rank {check.jacobian_rank},"
            f" exchange rank {check.exchange_rank}"
        )
    status = ExitStatus.NEGATIVE if check.verdict is JacobianVerdict.MISMATCH else ExitStatus.OK
    return CommandResult(status, report, payload)


def _cmd_degenerate_hom(opts: Namespace, stdin: TextIO) -> CommandResult:
    _, q = _read_quiver(opts, stdin)
    budget = SearchBudget(max_members=opts.class_budget, max_depth=opts.depth_budget)
    result = build_degenerate_hom(q, opts.depth_budget, budget, threads=opts.threads)
    if isinstance(result, Inapplicable):
        a, b = result.pair
        payload: Dict[str, Any] = {
            "outcome": "inapplicable",
            "pair": [a + 1, b + 1],
            "path": _path(result.path),
        }
        report = (
            f"inapplicable: covering pair ({a + 1}, {b + 1})"
            f" after path [{format_vertex_list(result.path)}]"
        )
        return CommandResult(ExitStatus.NEGATIVE, report, payload)
    if not isinstance(result, DegenerateHom):
        return CommandResult(
            ExitStatus.INDETERMINATE,
            f"indeterminate: {result.reason}",
            {"outcome": "indeterminate", "reason": result.reason},
        )
    payload = {
        "outcome": "degenerate-hom",
        "depth": result.depth,
        "relations_checked": result.relations_checked,
        "violations": result.violations,
        "values": {label: _fraction(value) for label, value in result.values.items()},
    }
    distinct = sorted({_fraction(v) for v in result.values.values()})
    report = (
        f"degenerate homomorphism with values {{{', '.join(distinct)}}}:"
        f" {result.relations_checked} relations checked to depth {result.depth}"
    )
    if result.violations:
        report += "\n" + "\n".join(result.violations)
        return CommandResult(ExitStatus.NEGATIVE, report, payload)
    return CommandResult(ExitStatus.OK, report, payload)


def _cmd_evaluate(opts: Namespace, stdin: TextIO) -> CommandResult:
    _, q = _read_quiver(opts, stdin)
    point = _point(q, opts.start, 1)
    path = _vertices(opts.path)
    trajectory = evaluate_cluster_point(initial_seed(q), point, path)
    rows = [[_fraction(v) for v in values] for values in trajectory]
    report = "\n".join(" ".join(row) for row in rows)
    return CommandResult(ExitStatus.OK, report, {"path": _path(path), "values": rows})


def _cmd_kernel_path(opts: Namespace, stdin: TextIO) -> CommandResult:
    _, q = _read_quiver(opts, stdin)
    point = _point(q, opts.values, 0)
    cycle = kernel_path_witness(initial_seed(q), point)
    if cycle is None:
        return CommandResult(ExitStatus.NEGATIVE, "not found", {"cycle": None})
    return CommandResult(
        ExitStatus.OK, f"cycle [{format_vertex_list(cycle)}]", {"cycle": _path(cycle)}
    )


def _cmd_laurent_check(opts: Namespace, stdin: TextIO) -> CommandResult:
    _, q = _read_quiver(opts, stdin)
    seed = initial_seed(q)
    check = laurent_check(seed, opts.depth)
    payload: Dict[str, Any] = {
        "depth": check.depth,
        "mutations": check.mutations,
        "violations": [str(v) for v in check.violations],
    }
    lines = [
        f"{check.mutations} mutations to depth {check.depth},"
        f" {len(check.violations)} violations"
    ]
    if opts.variables:
        enumeration = enumerate_cluster_variables(seed, opts.depth)
        payload["variables"] = [format_laurent(v) for v in enumeration.variables]
        payload["complete"] = enumeration.complete
        lines.append(
            f"{len(enumeration.variables)} cluster variables"
            f" ({'complete' if enumeration.complete else 'incomplete'}):"
        )
        lines.extend(payload["variables"])
    status = ExitStatus.OK if check.ok else ExitStatus.NEGATIVE
    return CommandResult(status, "\n".join(lines), payload)


def _cmd_info(opts: Namespace, stdin: TextIO) -> CommandResult:
    name, q = _read_quiver(opts, stdin)
    flags = structural_class(q).as_dict()
    payload = {
        "name": name,
        "vertices": q.n,
        "frozen": _path(sorted(q.frozen)),
        "structure": flags,
        "exchange_rank": exchange_rank(q),
        "full_rank": is_full_rank(q),
        "covering_pairs": _pairs(covering_pairs(q)),
        "sinks": _path(sinks(q)),
        "sources": _path(sources(q)),
        "canonical_form": canonical_form(q).hex(),
    }
    lines = [f"{name}: {q.n} vertices, frozen [{format_vertex_list(sorted(q.frozen))}]"]
    present = [k for k, v in flags.items() if v]
    lines.append("structure: " + (", ".join(present) or "none"))
    lines.append(f"exchange rank {payload['exchange_rank']} (full rank: {payload['full_rank']})")
    lines.append(f"covering pairs: {payload['covering_pairs']}")
    lines.append(f"sinks: {payload['sinks']}, sources: {payload['sources']}")
    return CommandResult(ExitStatus.OK, "\n".join(lines), payload)


def _main() -> None:
    result = dispatch(sys.argv[1:])
    stream = sys.stderr if result.exit_status == ExitStatus.USAGE else sys.stdout
    if result.report:
        print(result.report, file=stream)
    sys.exit(int(result.exit_status))


if __name__ == "__main__":
    _main()
