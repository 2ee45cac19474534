import csv
import io
import json

import pytest

from symstrat import cli


def run(*argv):
    return cli.run(list(argv))


def test_ranges_json():
    code, out, _ = run("ranges", "--manifold", "R4", "--lambda", "2", "--j", "5", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["bound"] == 16 and doc["case"] == "star_a"
    assert set(doc) >= {"bound", "case", "inputs", "warnings"}


def test_ranges_label_and_batch(tmp_path):
    code, out, _ = run("ranges", "--label", "bounded-sym", "--param", "k=6", "--param", "c=3", "--param", "d=2", "--format", "json")
    assert code == 0 and json.loads(out)["bound"] == 5
    batch = tmp_path / "rows.csv"
    batch.write_text("manifold,lambda,j\nR4,2,5\nsolid-torus,3,4\nmobius,2,4\n")
    code, out, _ = run("ranges", "--batch", str(batch), "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["bound", "case", "direction", "inputs", "warnings"]
    assert [r[0] for r in rows[1:]] == ["16", "6", "2"]


def test_ranges_missing_arguments():
    code, _, err = run("ranges", "--manifold", "R4")
    assert code == 2 and "needs" in err


def test_collapses():
    code, out, _ = run("collapses", "--lambda", "1,1,2", "--format", "json")
    assert code == 0
    assert json.loads(out)["depths"] == {"0": [[2, 1, 1]], "1": [[2, 2], [3, 1]], "2": [[4]]}


def test_e1_csv_is_the_worked_page():
    code, out, _ = run("e1", "--lambda", "2", "--j", "1", "--d", "2", "--format", "csv")
    assert code == 0
    assert out == "q\\p,0,1\n4,1,0\n3,1,0\n2,0,0\n1,0,1\n"


def test_e1_json_reports_degenerate_warning():
    code, out, _ = run("e1", "--lambda", "1", "--j", "1", "--d", "2", "--format", "json")
    assert code == 0
    assert json.loads(out)["warnings"]


def test_strata_and_chi():
    code, out, _ = run("strata", "--lambda", "1,2", "--d", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["strata"][0] == {"partition": "2,1", "homology": {"0": 1, "1": 1}, "compact_support": {"3": 1, "4": 1}}
    code, out, _ = run("chi", "--lambda", "2", "--j", "1", "--d", "2", "--format", "json")
    assert json.loads(out)["totals"] == {"Sym": 1, "D": 1, "W": 0}


def test_sym_operators():
    code, out, _ = run("sym", "--manifold", "S2", "--k", "2", "--operators", "--format", "json")
    doc = json.loads(out)
    assert doc["table"]["2"] == [1, 0, 1, 0, 1]
    entries = [x for row in doc["operators"]["transfer"]["matrix"] for x in row]
    assert all("/" in x for x in entries)


@pytest.mark.parametrize(
    "argv",
    [
        ["nonsense"],
        ["e1", "--lambda", "2", "--j", "1"],
        ["e1", "--lambda", "0,2", "--j", "1", "--d", "2"],
        ["e1", "--lambda", "2", "--j", "-1", "--d", "2"],
        ["e1", "--lambda", "2", "--j", "1", "--d", "1"],
        ["sym", "--manifold", "no-such-model", "--k", "2"],
        ["strata", "--d", "2"],
        ["ranges", "--manifold", "mobius", "--lambda", "2", "--j", "1", "--label", "star_a"],
        ["verify", "--suite", "nope"],
        ["ranges", "--manifold", "R3", "--lambda", "2", "--j", "1", "--format", "xml"],
    ],
)
def test_usage_errors(argv):
    code, out, err = cli.run(argv)
    assert code == 2
    assert out == "" and err


def test_resource_guards():
    assert run("sym", "--manifold", "S2", "--k", "9")[0] == 3
    assert run("strata", "--lambda", "1,1,1,1,1,1,1,1", "--d", "2")[0] == 3
    assert run("strata", "--lambda", "1,1,1", "--d", "2", "--max-n", "2")[0] == 3
    assert run("collapses", "--lambda", "3,3,3", "--max-k", "8")[0] == 3


@pytest.mark.parametrize("argv", cli.SAMPLE_INVOCATIONS)
@pytest.mark.parametrize("fmt", ["json", "csv", "pretty"])
def test_deterministic_and_round_trip(argv, fmt):
    first = cli.render(argv + ["--format", fmt])
    assert first == cli.render(argv + ["--format", fmt])
    if fmt != "pretty":
        assert cli.reprint(first, fmt) == first


def test_main_writes_streams(capsys):
    assert cli.main(["collapses", "--lambda", "1,2"]) == 0
    assert capsys.readouterr().out == "0: 2,1\n1: 3\n"
    assert cli.main(["collapses"]) == 2
    assert "required" in capsys.readouterr().err
    assert cli.main(["--help"]) == 0


def test_verify_partitions_names_the_collapse_checks():
    code, out, _ = run("verify", "--suite", "partitions")
    assert code == 0
    assert "REFUTED" in out and "ones >= j - p" in out and "bijection" in out
