"""
命令行入口
bounds / table / verify / exact / gadget / gap 六个子命令
"""
import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from loguru import logger

from eqdist.core.bounds import bound_registry
from eqdist.core.errors import EqdistError
from eqdist.core.exact import alpha_t, eq, eq_t, gap_report, max_clique
from eqdist.core.graph6 import encode_graph6
from eqdist.core.reductions import build_gadget, subdivision_distance_check, verify_reduction
from eqdist.core.report import (
    TABLE_SUITES,
    OutputFormat,
    RunConfig,
    collect_inputs,
    render,
    reproduce_table,
    run_bounds,
)
from eqdist.core.tolerances import Tolerances
from eqdist.core.verifier import SUITES, VerifySettings, run_suite, summarize
from eqdist.utils.config import config

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERIFY_FAILED = 2


def setup_logging(verbose: bool = False) -> None:
    """按 logging.yaml 配置 loguru: 控制台、轮转文件与单独的错误文件"""
    log_config = config.get_section("logging").get("logging", {})
    level = "DEBUG" if verbose else log_config.get("level", "INFO")
    logger.remove()

    console = log_config.get("console", {})
    if console.get("enabled", True):
        kwargs = {"format": console["format"]} if console.get("format") else {}
        logger.add(sys.stderr, level=level, **kwargs)

    file_config = log_config.get("file", {})
    if file_config.get("enabled", False):
        log_path = config.resolve_path("logging.logging.file.path", "logs/eqdist.log")
        log_path.parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            str(log_path),
            level=level,
            rotation=file_config.get("rotation", "100 MB"),
            retention=file_config.get("retention", "30 days"),
            compression=file_config.get("compression", "zip"),
            encoding="utf-8",
        )
        logger.info(f"File logging enabled: {log_path}")

    error_file_config = log_config.get("error_file", {})
    if error_file_config.get("enabled", False):
        error_log_path = config.resolve_path("logging.logging.error_file.path", "logs/error.log")
        error_log_path.parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            str(error_log_path),
            level=error_file_config.get("level", "ERROR"),
            rotation=error_file_config.get("rotation", "50 MB"),
            retention=error_file_config.get("retention", "90 days"),
            encoding="utf-8",
        )
        logger.info(f"Error logging enabled: {error_log_path}")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def _tolerances(args: argparse.Namespace) -> Tolerances:
    return Tolerances.from_config(
        lp_epsilon=getattr(args, "eps", None),
        group_tol=getattr(args, "group_tol", None),
        inclusion_slack=getattr(args, "slack", None),
    )


def _budget(args: argparse.Namespace) -> int:
    return args.budget if args.budget is not None else int(config.get("solver.clique.budget", 10 ** 8))


def _workers(args: argparse.Namespace) -> int:
    return args.workers if args.workers is not None else int(config.get("report.concurrency.max_workers", 1))


def _tables_dir() -> Path:
    return config.resolve_path("report.data.tables_dir", "data/tables")


def _run_config(args: argparse.Namespace, ts: Sequence[int]) -> RunConfig:
    return RunConfig(
        names=args.name or [],
        g6=args.g6 or [],
        g6_files=args.g6_file or [],
        ts=list(ts),
        eq_row=getattr(args, "eq", False),
        bounds=[b.strip() for b in args.bounds.split(",") if b.strip()] if getattr(args, "bounds", None) else None,
        exact=getattr(args, "exact", False),
        budget=_budget(args),
        format=getattr(args, "format", None) or config.get("report.output.default_format", "table"),
        tolerances=_tolerances(args),
        workers=_workers(args),
    )


# ---- 子命令 ----

def cmd_bounds(args: argparse.Namespace) -> int:
    cfg = _run_config(args, args.t or ([] if args.eq else [2]))
    graphs = collect_inputs(cfg)
    rows = run_bounds(cfg, graphs)
    _emit(render(rows, cfg.format, cfg.columns, cfg.exact), args.out)
    return EXIT_ERROR if any(r.error for r in rows) else EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    only = [k.strip() for k in args.only.split(",")] if args.only else None
    table, rows, diff = reproduce_table(
        args.suite, _tables_dir(), _tolerances(args), _budget(args), _workers(args), only
    )
    fmt = OutputFormat(args.format or config.get("report.output.default_format", "table"))
    columns = [c for c in table.columns if c != "exact"]
    text = render(rows, fmt, columns, exact=True)
    if fmt is OutputFormat.JSON:
        text += json.dumps({"diff": diff.model_dump(mode="json")}, ensure_ascii=False) + "\n"
    else:
        lines = [f"# {diff.compared} rows compared, {len(diff.mismatches)} mismatching cells"]
        lines += [f"# {d.row} [{d.column}]: table {d.expected}, computed {d.actual}" for d in diff.mismatches]
        lines += [f"# bold rule disagrees: {name}" for name in diff.bold_mismatches]
        lines += [f"# skipped: {s}" for s in diff.skipped]
        if diff.unreproduced:
            lines.append(f"# no graph available: {', '.join(diff.unreproduced)}")
        text += "\n".join(lines) + "\n"
    _emit(text, args.out)
    if any(r.error for r in rows):
        return EXIT_ERROR
    return EXIT_VERIFY_FAILED if args.strict and not diff.clean else EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    section = config.get_section("report").get("verify", {}) or {}
    settings = VerifySettings(**section, budget=_budget(args), tolerances=_tolerances(args))
    if args.seed is not None:
        settings.seed = args.seed
    lines: List[str] = []
    failed = False
    for name in args.suite or list(SUITES):
        results = list(run_suite(name, settings))
        lines.extend(r.model_dump_json() for r in results)
        summary = summarize(name, results)
        lines.append(json.dumps({"summary": summary.model_dump(mode="json")}))
        logger.info(f"Suite {name}: {summary.passed} passed, {summary.failed} failed, {summary.inconclusive} inconclusive")
        failed = failed or not summary.ok
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def cmd_exact(args: argparse.Namespace) -> int:
    cfg = _run_config(args, args.t or [])
    budget = cfg.budget
    lines = []
    for g in collect_inputs(cfg):
        record = {"graph": g.name, "n": g.n}
        clique = max_clique(g, budget)
        record["omega"] = {"value": clique.value, "witness": clique.witness}
        for t in cfg.ts:
            value, alpha = eq_t(g, t, budget), alpha_t(g, t, budget)
            record[f"eq_{t}"] = {"value": value.value, "witness": value.witness}
            record[f"alpha_{t}"] = {"value": alpha.value, "witness": alpha.witness}
        best = eq(g, budget, tolerances=cfg.tolerances)
        record["eq"] = {"value": best.value, "t": best.t, "witness": best.witness, "evaluated": best.evaluated}
        lines.append(json.dumps(record, ensure_ascii=False))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_gadget(args: argparse.Namespace) -> int:
    cfg = _run_config(args, [])
    lines = []
    failed = False
    for g in collect_inputs(cfg):
        gadget = build_gadget(g, args.t)
        record = {
            "graph": g.name,
            "kind": gadget.kind.value,
            "t": gadget.t,
            "graph6": encode_graph6(gadget.h),
            "original_vertices": list(gadget.original_vertices),
        }
        if args.verify:
            report = verify_reduction(g, args.t, cfg.budget)
            record["report"] = report.model_dump(mode="json")
            if args.t > 0:
                record["distances_ok"] = subdivision_distance_check(g, gadget)
            failed = failed or report.verdict == "violated" or record.get("distances_ok") is False
        lines.append(json.dumps(record, ensure_ascii=False))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def cmd_gap(args: argparse.Namespace) -> int:
    cfg = _run_config(args, [args.t])
    report = gap_report(collect_inputs(cfg), args.t, cfg.budget)
    lines = [r.model_dump_json() for r in report.rows]
    lines.append(json.dumps({"t": report.t, "max_gap": report.max_gap}))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_ERROR if any(r.error for r in report.rows) else EXIT_OK


# ---- 参数 ----

def _add_inputs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--name", action="append", help="named graph, e.g. petersen, j_7_3, es_5_2 (repeatable)")
    parser.add_argument("--g6", action="append", help="inline graph6 string (repeatable)")
    parser.add_argument("--g6-file", action="append", help="file with one graph6 string per line (repeatable)")


def _add_solver(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--budget", type=int, help="branch-node budget of the clique solver")
    parser.add_argument("--eps", type=float, help="epsilon for strict LP inequalities")
    parser.add_argument("--group-tol", type=float, help="relative tolerance for grouping equal eigenvalues")
    parser.add_argument("--slack", type=float, help="inclusion slack for eigenvalue thresholds")
    parser.add_argument("--workers", type=int, help="worker processes for row evaluation")
    parser.add_argument("--out", help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqdist",
        description="Spectral bounds and exact values for t-equidistant numbers of graphs.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    subparsers = parser.add_subparsers(dest="command", required=True)

    p_bounds = subparsers.add_parser("bounds", help="bound suite per (graph, t)")
    _add_inputs(p_bounds)
    _add_solver(p_bounds)
    p_bounds.add_argument("--t", type=int, action="append", help="target t of eq_t (repeatable, default 2)")
    p_bounds.add_argument("--eq", action="store_true", help="also emit the equidistant-number row")
    p_bounds.add_argument("--bounds", help=f"comma-separated subset of {','.join(bound_registry)}")
    p_bounds.add_argument("--exact", action="store_true", help="append the exact value")
    p_bounds.add_argument("--format", choices=[f.value for f in OutputFormat])
    p_bounds.set_defaults(func=cmd_bounds)

    p_table = subparsers.add_parser("table", help="recompute a bundled bound table and diff it")
    p_table.add_argument("suite", choices=TABLE_SUITES)
    p_table.add_argument("--only", help="comma-separated graph keys to recompute")
    p_table.add_argument("--strict", action="store_true", help="exit 2 when any cell disagrees")
    p_table.add_argument("--format", choices=[f.value for f in OutputFormat])
    _add_solver(p_table)
    p_table.set_defaults(func=cmd_table)

    p_verify = subparsers.add_parser("verify", help="run verification suites, JSON lines output")
    p_verify.add_argument("--suite", action="append", choices=list(SUITES), help="suite to run (repeatable, default all)")
    p_verify.add_argument("--seed", type=int, help="random seed for generated corpora")
    _add_solver(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_exact = subparsers.add_parser("exact", help="omega, eq_t, alpha_t and eq with witnesses")
    _add_inputs(p_exact)
    _add_solver(p_exact)
    p_exact.add_argument("--t", type=int, action="append", help="t values for eq_t and alpha_t (repeatable)")
    p_exact.set_defaults(func=cmd_exact)

    p_gadget = subparsers.add_parser("gadget", help="reduction gadget in graph6")
    _add_inputs(p_gadget)
    _add_solver(p_gadget)
    p_gadget.add_argument("--t", type=int, required=True, help="odd/even subdivision parameter, 0 for the join")
    p_gadget.add_argument("--verify", action="store_true", help="check the reduction identity with the exact solver")
    p_gadget.set_defaults(func=cmd_gadget)

    p_gap = subparsers.add_parser("gap", help="alpha_{t-1} - eq_t per graph")
    _add_inputs(p_gap)
    _add_solver(p_gap)
    p_gap.add_argument("--t", type=int, required=True)
    p_gap.set_defaults(func=cmd_gap)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)
    try:
        return args.func(args)
    except (EqdistError, ValueError, OSError) as e:
        logger.error(f"{args.command} failed: {e}", exc_info=args.verbose)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
