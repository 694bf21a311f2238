"""
Command-line interface: ``beidepth <command> ...``.

Exit status: 0 on success, 1 on usage or precondition errors, 2 on
malformed graph input, 3 when a size limit or the sweep budget stops the
run, 4 when the predicted depth and the oracle disagree.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import IO, TYPE_CHECKING, Any, NoReturn

from beidepth import __version__
from beidepth.classify import classify
from beidepth.config import Settings, load_settings
from beidepth.depth import InconsistentPredictionError, predict_depth
from beidepth.families import Family, FamilySpec, construct, stated_invariants
from beidepth.graph import (
    GraphFormatError,
    format_edge_list,
    invariants,
    parse_graph,
    parse_graph6,
    to_dot,
)
from beidepth.oracle import OracleLimitExceeded, depth_exact
from beidepth.sweep import SweepLimitExceeded, SweepReport, sweep

if TYPE_CHECKING:
    from collections.abc import Sequence

    from beidepth.graph import Graph

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_LIMIT = 3
EXIT_MISMATCH = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(item) for item in text.split(",") if item.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit(out: IO[str], args: argparse.Namespace, data: Any, text: str) -> None:
    if args.json:
        out.write(json.dumps(data, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def _read_graph(args: argparse.Namespace, stdin: IO[str]) -> Graph:
    if args.graph6 is not None:
        return parse_graph6(args.graph6)
    if args.source not in (None, "-"):
        with open(args.source, "rb") as handle:
            return parse_graph(handle.read())
    try:
        text = stdin.read()
    except UnicodeDecodeError as exc:
        raise GraphFormatError(f"graph input on stdin is not ASCII: {exc.reason}") from exc
    return parse_graph(text)


def _table(rows: dict[str, Any]) -> str:
    width = max(len(key) for key in rows)
    return "\n".join(f"{key.ljust(width)}  {value}" for key, value in rows.items())


def _cmd_invariants(
    args: argparse.Namespace, settings: Settings, graph: Graph, out: IO[str]
) -> int:
    bundle = invariants(graph)
    _emit(out, args, bundle.as_dict(), _table(bundle.as_dict()))
    return EXIT_OK


def _cmd_classify(
    args: argparse.Namespace, settings: Settings, graph: Graph, out: IO[str]
) -> int:
    label = classify(graph)
    data = {"tag": label.tag.value, "detail": dict(label.detail)}
    text = label.tag.value
    if label.detail:
        text += "\n" + json.dumps(dict(label.detail), indent=2, sort_keys=True)
    _emit(out, args, data, text)
    return EXIT_OK


def _cmd_depth(
    args: argparse.Namespace, settings: Settings, graph: Graph, out: IO[str]
) -> int:
    result = predict_depth(graph)
    data = result.as_dict()
    if result.exact is not None:
        text = f"depth {result.exact} ({result.rule.value})"
    else:
        text = f"depth in [{result.lower}, {result.upper}] ({result.rule.value})"
    status = EXIT_OK
    if args.oracle:
        report = depth_exact(graph, var_limit=settings.oracle_var_limit)
        data["oracle"] = report.as_dict()
        text += f"\noracle depth {report.depth}"
        lower, upper = result.lower, result.upper
        if result.exact is not None:
            lower = upper = result.exact
        if not lower <= report.depth <= upper:
            logger.error(
                "predicted [%d, %d] but the oracle found %d", lower, upper, report.depth
            )
            text += " (mismatch)"
            status = EXIT_MISMATCH
    _emit(out, args, data, text)
    return status


def _cmd_oracle(
    args: argparse.Namespace, settings: Settings, graph: Graph, out: IO[str]
) -> int:
    field = args.field.upper()
    report = depth_exact(graph, field=field, var_limit=settings.oracle_var_limit)
    text = _table(
        {
            "depth": report.depth,
            "pd": report.pd,
            "reg": report.reg,
            "extremal": ", ".join(f"({i}, {j})" for i, j in report.extremal),
            "field": report.field,
        }
    )
    if args.betti:
        text += "\n\n" + report.betti_initial.format()
    _emit(out, args, report.as_dict(), text)
    return EXIT_OK


def _cmd_export_dot(
    args: argparse.Namespace, settings: Settings, graph: Graph, out: IO[str]
) -> int:
    out.write(to_dot(graph, name=args.name) + "\n")
    return EXIT_OK


def _cmd_construct(args: argparse.Namespace, settings: Settings, out: IO[str]) -> int:
    spec = FamilySpec(
        Family(args.family),
        n=args.n,
        d=args.d,
        f=args.f,
        kappa=args.kappa,
        r=args.r,
        q=args.q,
        shared=args.shared,
    )
    graph = construct(spec)
    stated = stated_invariants(spec)
    data = {
        "graph6": graph.to_graph6(),
        "edges": [list(edge) for edge in graph.edges()],
        "invariants": invariants(graph).as_dict(),
        "stated": None if stated is None else stated._asdict(),
    }
    text = graph.to_graph6() if args.format == "graph6" else format_edge_list(graph)
    _emit(out, args, data, text)
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace, settings: Settings, out: IO[str]) -> int:
    report = sweep(
        args.n,
        args.oracle,
        settings=settings,
        jobs=args.jobs,
        resume=args.resume,
        max_graphs=args.max_graphs,
    )
    if args.out:
        if args.resume is not None:
            try:
                with open(args.out, encoding="utf-8") as handle:
                    report = SweepReport.read_jsonl(handle).merge(report)
            except FileNotFoundError:
                pass
        with open(args.out, "w", encoding="utf-8") as handle:
            report.write_jsonl(handle)
    summary = report.summary
    if args.json:
        out.write(json.dumps(summary, sort_keys=True) + "\n")
    else:
        out.write(
            _table(
                {
                    "graphs": summary["graphs"],
                    "tags": ", ".join(f"{k}={v}" for k, v in summary["tags"].items()),
                    "exact": summary["exact"],
                    "consistency": ", ".join(
                        f"{k}={v}" for k, v in summary["consistency"].items()
                    ),
                    "counterexamples": len(summary["counterexamples"]),
                    "char2_disagreements": len(summary["char2_disagreements"]),
                    "probe": ", ".join(summary["probe"]) or "-",
                    "complete": summary["complete"],
                }
            )
            + "\n"
        )
    if report.counterexamples:
        return EXIT_MISMATCH
    if not report.complete:
        sys.stderr.write(f"sweep interrupted; resume with --resume {report.resume_token}\n")
        return EXIT_LIMIT
    return EXIT_OK


_GRAPH_COMMANDS = {
    "invariants": _cmd_invariants,
    "classify": _cmd_classify,
    "depth": _cmd_depth,
    "oracle": _cmd_oracle,
    "export-dot": _cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON records")
    common.add_argument("--var-limit", type=int, help="largest polynomial ring for the oracle")
    common.add_argument("--budget", type=float, help="sweep wall-clock cap in seconds")
    common.add_argument(
        "--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
    )

    source = _Parser(add_help=False)
    source.add_argument("source", nargs="?", help="edge-list or graph6 file, '-' for stdin")
    source.add_argument("-g6", "--graph6", help="graph6 string")

    parser = _Parser(prog="beidepth", description="Depth of binomial edge ideals.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("invariants", parents=[common, source], help="n, d, f, kappa, gap")
    commands.add_parser("classify", parents=[common, source], help="depth class")
    depth = commands.add_parser("depth", parents=[common, source], help="predicted depth")
    depth.add_argument("--oracle", action="store_true", help="compare with the exact depth")
    oracle = commands.add_parser("oracle", parents=[common, source], help="exact depth")
    oracle.add_argument("--betti", action="store_true", help="print the Betti table")
    oracle.add_argument("--field", choices=("q", "f2"), default="q")
    dot = commands.add_parser("export-dot", parents=[common, source], help="Graphviz DOT")
    dot.add_argument("--name", default="G")

    build = commands.add_parser("construct", parents=[common], help="build a family member")
    build.add_argument("family", choices=[family.value for family in Family])
    for name in ("n", "d", "f", "kappa"):
        build.add_argument(f"--{name}", type=int)
    build.add_argument("--r", type=_int_list, default=(), help="clique sizes, e.g. 3,4,4")
    build.add_argument("--q", type=_int_list, default=(), help="overlap sizes")
    build.add_argument("--shared", type=_int_list, default=(), help="shared overlap counts")
    build.add_argument("--format", choices=("edge-list", "graph6"), default="edge-list")

    run = commands.add_parser("sweep", parents=[common], help="exhaustive check")
    run.add_argument("--n", type=int, required=True, help="largest vertex count")
    run.add_argument("--oracle", action="store_true", help="run the exact oracle too")
    run.add_argument("--jobs", type=int, default=1)
    run.add_argument("--out", help="line-delimited JSON report file")
    run.add_argument("--resume", help="token printed by an interrupted sweep")
    run.add_argument("--max-graphs", type=int)
    return parser


def _settings(args: argparse.Namespace) -> Settings:
    settings = load_settings()
    overrides = {
        "oracle_var_limit": args.var_limit,
        "sweep_budget": args.budget,
        "log_level": args.log_level,
    }
    return settings._replace(**{k: v for k, v in overrides.items() if v is not None})


def main(
    argv: Sequence[str] | None = None,
    stdin: IO[str] | None = None,
    stdout: IO[str] | None = None,
) -> int:
    args = build_parser().parse_args(argv)
    stdin = sys.stdin if stdin is None else stdin
    out = sys.stdout if stdout is None else stdout
    try:
        settings = _settings(args)
        logging.basicConfig(
            level=settings.log_level, format="%(levelname)s %(name)s: %(message)s"
        )
        if args.command == "construct":
            return _cmd_construct(args, settings, out)
        if args.command == "sweep":
            return _cmd_sweep(args, settings, out)
        graph = _read_graph(args, stdin)
        return _GRAPH_COMMANDS[args.command](args, settings, graph, out)
    except GraphFormatError as exc:
        status, message = EXIT_PARSE, str(exc)
    except (OracleLimitExceeded, SweepLimitExceeded) as exc:
        status, message = EXIT_LIMIT, str(exc)
    except InconsistentPredictionError as exc:
        status, message = EXIT_MISMATCH, str(exc)
    except (ValueError, OSError) as exc:
        status, message = EXIT_USAGE, str(exc)
    sys.stderr.write(f"beidepth: error: {message}\n")
    return status


__all__ = ["build_parser", "main"]
