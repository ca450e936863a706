"""
报告模块
行计算、CSV/JSON/表格输出,以及与内置表格数据的逐格比对
"""
import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import yaml
from loguru import logger
from pydantic import BaseModel, Field, field_validator, model_validator

from eqdist.core.bounds import EQ_SUITE_COLUMNS, SUITE_COLUMNS, BoundResult, bound_registry, suite
from eqdist.core.errors import CatalogError, EqdistError
from eqdist.core.exact import DEFAULT_BUDGET
from eqdist.core.graph import Graph
from eqdist.core.graph6 import parse_graph6, read_graph6_file
from eqdist.core.named import resolve_graph
from eqdist.core.tolerances import DEFAULT_TOLERANCES, Tolerances

TABLE_SUITES = ("eq2", "eq3", "eq")


class OutputFormat(str, Enum):
    TABLE = "table"
    CSV = "csv"
    JSON = "json"


class RunConfig(BaseModel):
    """一次 bounds 运行的全部输入"""

    names: List[str] = Field(default_factory=list)
    g6: List[str] = Field(default_factory=list)
    g6_files: List[str] = Field(default_factory=list)
    ts: List[int] = Field(default_factory=lambda: [2])
    eq_row: bool = False
    bounds: Optional[List[str]] = None
    exact: bool = False
    budget: int = Field(DEFAULT_BUDGET, ge=1)
    format: OutputFormat = OutputFormat.TABLE
    tolerances: Tolerances = DEFAULT_TOLERANCES
    workers: int = Field(1, ge=1)

    @field_validator("ts")
    @classmethod
    def _positive_ts(cls, ts: List[int]) -> List[int]:
        if any(t < 1 for t in ts):
            raise ValueError(f"t values must be >= 1, got {ts}")
        return ts

    @field_validator("bounds")
    @classmethod
    def _known_bounds(cls, bounds: Optional[List[str]]) -> Optional[List[str]]:
        if bounds is not None:
            unknown = [b for b in bounds if b not in bound_registry]
            if unknown:
                raise ValueError(f"unknown bounds {unknown}, expected some of {sorted(bound_registry)}")
        return bounds

    @model_validator(mode="after")
    def _something_selected(self) -> "RunConfig":
        if self.bounds is not None and not self.bounds and not self.exact:
            raise ValueError("select at least one bound or --exact")
        return self

    @property
    def columns(self) -> List[str]:
        return list(self.bounds) if self.bounds is not None else list(SUITE_COLUMNS)


class ReportRow(BaseModel):
    """一行输出: 一个 (图, t);t 为 None 时是 eq 行"""

    index: int
    graph: str
    n: int
    t: Optional[int] = None
    bounds: Dict[str, BoundResult] = Field(default_factory=dict)
    exact: Optional[int] = None
    exact_error: Optional[str] = None
    error: Optional[str] = None
    seconds: float = Field(0.0, exclude=True)

    @property
    def tight(self) -> bool:
        """某个适用上界恰好等于精确值(表格中行名加粗的规则)"""
        return self.exact is not None and any(
            b.value == self.exact for b in self.bounds.values() if b.applicable
        )

    def cell(self, column: str) -> str:
        if column == "exact":
            if self.exact is not None:
                return str(self.exact)
            return self.exact_error or "-"
        bound = self.bounds.get(column)
        return bound.display() if bound is not None else "-"


# ---- 输入 ----

def collect_inputs(cfg: RunConfig) -> List[Graph]:
    """
    按命令行顺序收集输入图: 名称、内联 graph6、graph6 文件

    Raises:
        CatalogError / Graph6Error: 输入无法解析
    """
    graphs = [resolve_graph(name) for name in cfg.names]
    graphs.extend(parse_graph6(text, name=f"g6:{text}") for text in cfg.g6)
    for path in cfg.g6_files:
        graphs.extend(read_graph6_file(path))
    logger.info(f"Collected {len(graphs)} input graphs")
    return graphs


# ---- 行计算 ----

RowTask = Tuple[int, Graph, Optional[int], Optional[List[str]], bool, int, Tolerances]


def evaluate_row(task: RowTask) -> ReportRow:
    """计算一行;库级错误记录在行内"""
    index, g, t, columns, exact, budget, tolerances = task
    start = time.time()
    row = ReportRow(index=index, graph=g.name, n=g.n, t=t)
    try:
        result = suite(g, t, tolerances, columns=columns, exact=exact, budget=budget)
        row.bounds = result.bounds
        row.exact = result.exact
        row.exact_error = result.exact_error
    except EqdistError as e:
        logger.error(f"Row {g.name} (t={t}) failed: {e}", exc_info=True)
        row.error = str(e)
    row.seconds = time.time() - start
    logger.debug(f"Row {g.name} (t={t}) done in {row.seconds:.2f}s")
    return row


def run_rows(tasks: Sequence[RowTask], workers: int = 1) -> List[ReportRow]:
    """按输入顺序返回各行;workers > 1 时使用进程池"""
    if workers <= 1 or len(tasks) <= 1:
        rows = [evaluate_row(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(evaluate_row, tasks))
    return sorted(rows, key=lambda r: r.index)


def run_bounds(cfg: RunConfig, graphs: Sequence[Graph]) -> List[ReportRow]:
    tasks: List[RowTask] = []
    for g in graphs:
        for t in cfg.ts:
            tasks.append((len(tasks), g, t, cfg.columns, cfg.exact, cfg.budget, cfg.tolerances))
        if cfg.eq_row:
            tasks.append((len(tasks), g, None, None, cfg.exact, cfg.budget, cfg.tolerances))
    return run_rows(tasks, cfg.workers)


# ---- 输出 ----

def _columns_for(rows: Sequence[ReportRow], columns: Sequence[str], exact: bool) -> List[str]:
    cols = list(columns)
    if any(r.t is None for r in rows):
        cols += [c for c in EQ_SUITE_COLUMNS if c not in cols]
    if exact:
        cols.append("exact")
    return cols


def render_csv(rows: Sequence[ReportRow], columns: Sequence[str], exact: bool = False) -> str:
    """CSV,不适用的上界写作 "-" """
    cols = _columns_for(rows, columns, exact)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["graph", "n", "t"] + cols + ["error"])
    for row in rows:
        t = "eq" if row.t is None else row.t
        writer.writerow([row.graph, row.n, t] + [row.cell(c) for c in cols] + [row.error or ""])
    return buffer.getvalue()


def _json_bound(bound: BoundResult) -> Any:
    if not bound.applicable:
        return {"na": bound.na_reason.value}
    if bound.saturated:
        return {"at_least": bound.value}
    return bound.value


def render_json(rows: Sequence[ReportRow]) -> str:
    """每行一个 JSON 对象;不适用的上界写作 {"na": 原因}"""
    lines = []
    for row in rows:
        payload = row.model_dump(mode="json", exclude={"bounds", "index"})
        payload["bounds"] = {k: _json_bound(v) for k, v in row.bounds.items()}
        lines.append(json.dumps(payload, ensure_ascii=False, sort_keys=True))
    return "\n".join(lines) + ("\n" if lines else "")


def render_table(rows: Sequence[ReportRow], columns: Sequence[str], exact: bool = False) -> str:
    """定宽文本表格,附每行耗时"""
    cols = _columns_for(rows, columns, exact)
    header = ["graph", "n", "t"] + cols + ["time"]
    body = []
    for row in rows:
        t = "eq" if row.t is None else str(row.t)
        cells = [row.cell(c) for c in cols] if row.error is None else ["error"] * len(cols)
        body.append([row.graph, str(row.n), t] + cells + [f"{row.seconds:.2f}s"])
    widths = [max(len(line[i]) for line in [header] + body) for i in range(len(header))]
    out = [" | ".join(h.ljust(w) for h, w in zip(header, widths))]
    out.append("-+-".join("-" * w for w in widths))
    out.extend(" | ".join(c.ljust(w) for c, w in zip(line, widths)) for line in body)
    errors = [f"{r.graph} (t={r.t}): {r.error}" for r in rows if r.error]
    out.extend(f"error: {e}" for e in errors)
    return "\n".join(out) + "\n"


def render(rows: Sequence[ReportRow], fmt: OutputFormat, columns: Sequence[str], exact: bool) -> str:
    if fmt is OutputFormat.CSV:
        return render_csv(rows, columns, exact)
    if fmt is OutputFormat.JSON:
        return render_json(rows)
    return render_table(rows, columns, exact)


# ---- 表格比对 ----

class GoldenRow(BaseModel):
    name: str
    graph: Optional[str] = None
    bold: bool = False
    cells: List[Union[int, str]]


class GoldenTable(BaseModel):
    suite: str
    t: Optional[int] = None
    columns: List[str]
    rows: List[GoldenRow]


class CellDiff(BaseModel):
    row: str
    column: str
    expected: str
    actual: str


class TableDiff(BaseModel):
    """逐格比对结果"""

    suite: str
    compared: int = 0
    unreproduced: List[str] = Field(default_factory=list)
    skipped: List[str] = Field(default_factory=list)
    mismatches: List[CellDiff] = Field(default_factory=list)
    bold_mismatches: List[str] = Field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.mismatches and not self.bold_mismatches


def load_golden(suite_name: str, tables_dir: Union[str, Path]) -> GoldenTable:
    if suite_name not in TABLE_SUITES:
        raise CatalogError(f"unknown table suite '{suite_name}', expected one of {TABLE_SUITES}")
    path = Path(tables_dir) / f"{suite_name}.yaml"
    with open(path, "r", encoding="utf-8") as f:
        table = GoldenTable(**yaml.safe_load(f))
    logger.info(f"Loaded table {suite_name}: {len(table.rows)} rows from {path}")
    return table


def diff_table(table: GoldenTable, rows: Sequence[ReportRow], sources: Sequence[GoldenRow]) -> TableDiff:
    """把计算得到的行与表格数据逐格比较;加粗规则按 ReportRow.tight 重新推导"""
    diff = TableDiff(suite=table.suite)
    for golden, row in zip(sources, rows):
        if row.error:
            diff.skipped.append(f"{golden.name}: {row.error}")
            continue
        diff.compared += 1
        for column, expected in zip(table.columns, golden.cells):
            actual = row.cell(column)
            if str(expected) != actual:
                diff.mismatches.append(
                    CellDiff(row=golden.name, column=column, expected=str(expected), actual=actual)
                )
        if row.exact is not None and row.tight != golden.bold:
            diff.bold_mismatches.append(golden.name)
    return diff


def reproduce_table(
    suite_name: str,
    tables_dir: Union[str, Path],
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    only: Optional[Sequence[str]] = None,
) -> Tuple[GoldenTable, List[ReportRow], TableDiff]:
    """
    重算一张表格

    Args:
        suite_name: eq2 / eq3 / eq
        only: 只重算这些图键(None 表示全部可构造的行)

    Returns:
        (表格数据, 计算行, 比对结果)
    """
    table = load_golden(suite_name, tables_dir)
    columns = [c for c in table.columns if c != "exact"]
    tasks: List[RowTask] = []
    sources: List[GoldenRow] = []
    unreproduced = []
    skipped = []
    for golden in table.rows:
        if golden.graph is None:
            unreproduced.append(golden.name)
            continue
        if only is not None and golden.graph not in only:
            continue
        try:
            g = resolve_graph(golden.graph).renamed(golden.name)
        except CatalogError as e:
            logger.warning(f"Table row {golden.name} skipped: {e}")
            skipped.append(f"{golden.name}: {e}")
            continue
        row_columns = None if table.t is None else columns
        tasks.append((len(tasks), g, table.t, row_columns, "exact" in table.columns, budget, tolerances))
        sources.append(golden)

    rows = run_rows(tasks, workers)
    diff = diff_table(table, rows, sources)
    diff.unreproduced = unreproduced
    diff.skipped = skipped + diff.skipped
    logger.info(
        f"Table {suite_name}: {diff.compared} rows compared, {len(diff.mismatches)} cell mismatches, "
        f"{len(unreproduced)} rows without a graph"
    )
    return table, rows, diff
