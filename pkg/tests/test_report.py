"""报告与表格比对测试"""
import json

import pytest
from pydantic import ValidationError

from eqdist.core.bounds import SUITE_COLUMNS
from eqdist.core.errors import CatalogError
from eqdist.core.graph import Graph
from eqdist.core.report import (
    GoldenRow,
    GoldenTable,
    OutputFormat,
    RunConfig,
    collect_inputs,
    diff_table,
    evaluate_row,
    load_golden,
    render,
    render_csv,
    render_json,
    render_table,
    reproduce_table,
    run_bounds,
    run_rows,
)
from eqdist.core.tolerances import DEFAULT_TOLERANCES
from eqdist.utils.config import PROJECT_ROOT

TABLES = PROJECT_ROOT / "data" / "tables"


@pytest.fixture
def petersen_rows(petersen):
    cfg = RunConfig(ts=[2], eq_row=True, bounds=["degree", "distance", "quotient_2"], exact=True)
    return cfg, run_bounds(cfg, [petersen])


class TestRunConfig:
    def test_defaults(self):
        cfg = RunConfig()
        assert cfg.ts == [2]
        assert cfg.columns == SUITE_COLUMNS
        assert cfg.format is OutputFormat.TABLE

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"ts": [0]},
            {"bounds": ["nope"]},
            {"bounds": []},
            {"workers": 0},
            {"budget": 0},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            RunConfig(**kwargs)

    def test_exact_only(self):
        assert RunConfig(bounds=[], exact=True).columns == []


def test_collect_inputs(tmp_path):
    path = tmp_path / "batch.g6"
    path.write_text("A_\nBw\n", encoding="ascii")
    cfg = RunConfig(names=["petersen"], g6=["D?{"], g6_files=[str(path)])
    graphs = collect_inputs(cfg)
    assert [g.n for g in graphs] == [10, 5, 2, 3]
    assert graphs[1].name == "g6:D?{"


def test_collect_unknown_name():
    with pytest.raises(CatalogError):
        collect_inputs(RunConfig(names=["no_such_graph"]))


class TestRows:
    def test_values(self, petersen_rows):
        _, rows = petersen_rows
        assert [r.t for r in rows] == [2, None]
        row, eq_row = rows
        assert row.cell("degree") == "7"
        assert row.cell("quotient_2") == "-"
        assert row.cell("exact") == "4"
        assert row.tight is False
        assert eq_row.cell("combined") == "4"
        assert eq_row.tight

    def test_error_is_kept_in_row(self):
        row = evaluate_row((0, Graph.empty(2, name="pair"), 2, ["degree"], False, 10, DEFAULT_TOLERANCES))
        assert row.error is not None
        assert row.bounds == {}

    def test_parallel_keeps_order(self, petersen):
        tasks = [(i, petersen, t, ["degree"], False, 10, DEFAULT_TOLERANCES) for i, t in enumerate((3, 1, 2))]
        rows = run_rows(tasks, workers=2)
        assert [r.t for r in rows] == [3, 1, 2]
        assert [r.cell("degree") for r in rows] == ["13", "4", "7"]


class TestRender:
    def test_csv(self, petersen_rows):
        cfg, rows = petersen_rows
        lines = render_csv(rows, cfg.columns, exact=True).splitlines()
        assert lines[0] == "graph,n,t,degree,distance,quotient_2,combined,exact,error"
        assert lines[1] == "Petersen graph,10,2,7,6,-,-,4,"
        assert lines[2] == "Petersen graph,10,eq,-,6,-,4,4,"

    def test_json(self, petersen_rows):
        _, rows = petersen_rows
        first, second = [json.loads(line) for line in render_json(rows).splitlines()]
        assert first["bounds"]["degree"] == 7
        assert first["bounds"]["quotient_2"] == {"na": "sign-condition-failed"}
        assert first["exact"] == 4
        assert "seconds" not in first
        assert second["t"] is None

    def test_json_saturated(self, petersen):
        cfg = RunConfig(ts=[2], bounds=["degree"])
        rows = run_bounds(cfg, [petersen])
        rows[0].bounds["degree"] = rows[0].bounds["degree"].model_copy(update={"saturated": True})
        assert json.loads(render_json(rows))["bounds"]["degree"] == {"at_least": 7}

    def test_table(self, petersen_rows):
        cfg, rows = petersen_rows
        text = render_table(rows, cfg.columns, exact=True)
        header = text.splitlines()[0]
        assert header.split(" | ")[0].strip() == "graph"
        assert "Petersen graph" in text
        assert header.rstrip().endswith("time")

    def test_render_dispatch(self, petersen_rows):
        cfg, rows = petersen_rows
        assert render(rows, OutputFormat.CSV, cfg.columns, True) == render_csv(rows, cfg.columns, True)


class TestTables:
    def test_bundled_tables_load(self):
        for suite_name, count in (("eq2", 69), ("eq3", 69), ("eq", 74)):
            table = load_golden(suite_name, TABLES)
            assert len(table.rows) == count
            assert all(len(r.cells) == len(table.columns) for r in table.rows)

    def test_unknown_suite(self):
        with pytest.raises(CatalogError):
            load_golden("eq9", TABLES)

    def test_petersen_eq2(self):
        _, rows, diff = reproduce_table("eq2", TABLES, only=["petersen"])
        assert len(rows) == 1
        assert diff.compared == 1
        assert [(d.column, d.expected, d.actual) for d in diff.mismatches] == [("phi", "43", "7")]
        assert diff.bold_mismatches == []
        assert "Balaban 10-cage" in diff.unreproduced

    def test_petersen_eq_row(self):
        _, rows, diff = reproduce_table("eq", TABLES, only=["petersen"])
        assert rows[0].t is None
        assert diff.clean

    def test_diff_detects_bold(self, petersen):
        table = GoldenTable(suite="eq2", t=2, columns=["degree", "exact"], rows=[])
        golden = GoldenRow(name="P", graph="petersen", bold=True, cells=[7, 4])
        rows = run_bounds(RunConfig(ts=[2], bounds=["degree"], exact=True), [petersen])
        diff = diff_table(table, rows, [golden])
        assert diff.mismatches == []
        assert diff.bold_mismatches == ["P"]
        assert not diff.clean


# 构造器可得、必须逐列复现的图
CONSTRUCTIBLE = [
    "petersen", "heawood", "thomsen", "hexahedron", "octahedron", "icosahedron", "dodecahedron",
    "desargues", "pappus", "moebius_kantor", "nauru", "coxeter",
]

DERIVED_COLUMNS = {
    "eq2": ["degree", "inertial", "ratio", "distance", "quotient_1", "quotient_2", "exact"],
    "eq3": ["degree", "inertial", "ratio", "distance", "quotient_1", "quotient_2", "exact"],
    "eq": ["distance", "combined", "exact"],
}


@pytest.fixture(scope="module")
def reproduced():
    cache = {}

    def get(suite_name):
        if suite_name not in cache:
            cache[suite_name] = reproduce_table(suite_name, TABLES)
        return cache[suite_name]

    return get


@pytest.mark.slow
@pytest.mark.parametrize("suite_name", ["eq2", "eq3", "eq"])
class TestTableReproduction:
    def test_every_row_with_a_graph_is_compared(self, reproduced, suite_name):
        table, rows, diff = reproduced(suite_name)
        assert diff.skipped == []
        assert all(row.error is None for row in rows)
        assert diff.compared == sum(r.graph is not None for r in table.rows)
        assert len(diff.unreproduced) == sum(r.graph is None for r in table.rows)

    def test_exact_and_degree_columns(self, reproduced, suite_name):
        _, _, diff = reproduced(suite_name)
        assert [d for d in diff.mismatches if d.column in ("exact", "degree")] == []

    def test_derived_columns_of_constructible_graphs(self, reproduced, suite_name):
        table, _, diff = reproduced(suite_name)
        names = {r.name for r in table.rows if r.graph in CONSTRUCTIBLE}
        assert len(names) == len(CONSTRUCTIBLE)
        columns = DERIVED_COLUMNS[suite_name]
        assert [d for d in diff.mismatches if d.row in names and d.column in columns] == []

    def test_rows_are_sound(self, reproduced, suite_name):
        _, rows, _ = reproduced(suite_name)
        for row in rows:
            assert row.exact is not None, row.graph
            for key, bound in row.bounds.items():
                if bound.applicable:
                    assert bound.value >= row.exact, (row.graph, key)


@pytest.mark.slow
def test_m22_bold_flag_differs_from_printed_row(reproduced):
    _, _, diff = reproduced("eq")
    assert "M22 Graph" in diff.bold_mismatches
