"""命令行测试"""
import json

import pytest

from eqdist.main import EXIT_ERROR, EXIT_OK, EXIT_VERIFY_FAILED, build_parser, main


def _stdout_lines(capsys):
    return capsys.readouterr().out.splitlines()


def test_bounds_csv(capsys):
    code = main(["bounds", "--name", "petersen", "--bounds", "degree,distance", "--exact", "--format", "csv"])
    assert code == EXIT_OK
    lines = _stdout_lines(capsys)
    assert lines[0] == "graph,n,t,degree,distance,exact,error"
    assert lines[1] == "Petersen graph,10,2,7,6,4,"


def test_bounds_several_t(capsys):
    code = main(["bounds", "--name", "petersen", "--t", "1", "--t", "3", "--bounds", "degree", "--format", "csv"])
    assert code == EXIT_OK
    lines = _stdout_lines(capsys)
    assert [line.split(",")[2:4] for line in lines[1:]] == [["1", "4"], ["3", "13"]]


def test_bounds_eq_row_only(capsys):
    code = main(["bounds", "--name", "petersen", "--eq", "--exact", "--format", "json"])
    assert code == EXIT_OK
    (record,) = [json.loads(line) for line in _stdout_lines(capsys)]
    assert record["t"] is None
    assert record["bounds"] == {"distance": 6, "combined": 4}
    assert record["exact"] == 4


def test_bounds_to_file(tmp_path, capsys):
    out = tmp_path / "rows.csv"
    code = main(["bounds", "--g6", "IheA@GUAo", "--bounds", "degree", "--format", "csv", "--out", str(out)])
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    assert out.read_text(encoding="utf-8").splitlines()[1] == "g6:IheA@GUAo,10,2,7,"


def test_bounds_error_row_sets_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.g6"
    path.write_text("Bw\nB?\n", encoding="ascii")
    code = main(["bounds", "--g6-file", str(path), "--bounds", "degree", "--format", "csv"])
    assert code == EXIT_ERROR
    rows = _stdout_lines(capsys)[1:]
    assert rows[0].endswith(",")
    assert "disconnected" in rows[1]


@pytest.mark.parametrize(
    "argv",
    [
        ["bounds", "--name", "no_such_graph"],
        ["bounds", "--g6", "A"],
        ["bounds", "--name", "petersen", "--bounds", "nope"],
        ["bounds", "--name", "petersen", "--t", "0"],
        ["gap", "--name", "petersen", "--t", "1"],
    ],
)
def test_input_errors(argv):
    assert main(argv) == EXIT_ERROR


def test_exact(capsys):
    assert main(["exact", "--name", "c_6", "--t", "2"]) == EXIT_OK
    (record,) = [json.loads(line) for line in _stdout_lines(capsys)]
    assert record["omega"]["value"] == 2
    assert record["eq_2"]["value"] == 3
    assert record["alpha_2"]["value"] == 2
    assert record["eq"]["value"] == 3
    assert record["eq"]["t"] == 2


def test_gadget_verify(capsys):
    assert main(["gadget", "--name", "c_5", "--t", "3", "--verify"]) == EXIT_OK
    (record,) = [json.loads(line) for line in _stdout_lines(capsys)]
    assert record["kind"] == "odd-subdivision"
    assert record["report"]["verdict"] == "verified"
    assert record["distances_ok"] is True


def test_gadget_rejects_split(capsys):
    assert main(["gadget", "--name", "k_3", "--t", "2"]) == EXIT_ERROR


def test_gap(capsys):
    assert main(["gap", "--name", "es_6_2", "--t", "4"]) == EXIT_OK
    lines = [json.loads(line) for line in _stdout_lines(capsys)]
    assert lines[0]["gap"] == 0
    assert lines[-1] == {"t": 4, "max_gap": 0}


def test_table_petersen(capsys):
    code = main(["table", "eq", "--only", "petersen", "--strict"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "Petersen graph" in out
    assert "# 1 rows compared, 0 mismatching cells" in out


def test_table_strict_reports_mismatch(capsys):
    code = main(["table", "eq2", "--only", "petersen", "--strict", "--format", "json"])
    assert code == EXIT_VERIFY_FAILED
    lines = [json.loads(line) for line in _stdout_lines(capsys)]
    diff = lines[-1]["diff"]
    assert diff["mismatches"] == [{"row": "Petersen graph", "column": "phi", "expected": "43", "actual": "7"}]


def test_verify_numerics(capsys):
    assert main(["verify", "--suite", "numerics", "--seed", "3"]) == EXIT_OK
    lines = [json.loads(line) for line in _stdout_lines(capsys)]
    summary = lines[-1]["summary"]
    assert summary["suite"] == "numerics"
    assert summary["failed"] == 0


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
