import json
import subprocess
import sys

import pytest

from partite_ekr.cli import EXIT_CONTRADICTION, EXIT_OK, EXIT_USAGE, formula_rows, main
from partite_ekr.model import loads_family, read_family


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def body(out):
    return json.loads(out)["body"]


def test_construct_writes_canonical_file(tmp_path, capsys):
    path = tmp_path / "w.txt"
    code, out, _ = run(capsys, "construct", "--name", "W_r", "--r", "3", "--n", "2", "--out", str(path))
    assert code == EXIT_OK
    assert path.read_text() == "PARTITE 3\nSIZES 2 2 2\n1 1 1\n1 1 2\n1 2 1\n2 1 1\n"
    assert "size: 4" in out and "formula_value: 4" in out


@pytest.mark.parametrize(
    "argv, size",
    [
        (["--name", "E", "--r", "3", "--n", "3", "--s", "2"], 15),
        (["--name", "K_rt", "--r", "4", "--t", "1", "--n", "2"], 8),
        (["--name", "W_rt", "--sizes", "3,2,2,2", "--t", "2"], 6),
    ],
)
def test_construct_sizes(capsys, argv, size):
    code, out, _ = run(capsys, "--json", "construct", *argv)
    res = body(out)["results"]
    assert code == EXIT_OK and res["size"] == size
    assert len(loads_family(res["family_text"])) == size


def test_construct_rejects_illegal_range(capsys):
    code, _, err = run(capsys, "construct", "--name", "E", "--r", "3", "--n", "3", "--s", "3")
    assert code == EXIT_USAGE
    assert "s=3 outside 1..n-1" in err


def test_analyze_reports(tmp_path, capsys):
    path = tmp_path / "w.txt"
    run(capsys, "construct", "--name", "W_r", "--r", "3", "--n", "2", "--out", str(path))
    code, out, _ = run(capsys, "--json", "analyze", str(path), "--s", "1", "--t", "1")
    res = body(out)["results"]
    assert (res["nu"], res["tau"]) == (1, 2)
    assert res["nontrivial_matching(s=1)"] and res["nontrivial_intersecting(t=1)"]

    full = tmp_path / "k.txt"
    full.write_text("PARTITE 2\nSIZES 3 3\n" + "".join(f"{a} {b}\n" for a in range(1, 4) for b in range(1, 4)))
    res = body(run(capsys, "--json", "analyze", str(full))[1])["results"]
    assert (res["nu"], res["tau"]) == (3, 3)

    empty = tmp_path / "e.txt"
    empty.write_text("PARTITE 3\nSIZES 2 2 2\n")
    res = body(run(capsys, "--json", "analyze", str(empty))[1])["results"]
    assert (res["nu"], res["tau"], res["fixed_coords"]) == (0, 0, "undefined")


def test_analyze_parse_error_names_line(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("PARTITE 2\nSIZES 2 2\n1 1\n3 1\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == EXIT_USAGE and "line 4" in err


def test_shift_and_closure(tmp_path, capsys):
    tri = tmp_path / "tri.txt"
    tri.write_text("PARTITE 3\nSIZES 2 2 2\n1 1 2\n1 2 1\n2 1 1\n")
    res = body(run(capsys, "--json", "shift", str(tri), "--part", "1", "--symbol", "2")[1])["results"]
    assert res["moved"] == 1 and res["blocked"] == 0
    out = tmp_path / "closed.txt"
    code, text, _ = run(capsys, "--json", "shift", str(tri), "--closure", "--t", "1", "--check", "--out", str(out))
    res = body(text)["results"]
    assert code == EXIT_OK
    assert res["resistant_parts"] == {"1": 2, "2": 2, "3": 2}
    assert all(c["passed"] for c in res["structure_checks"])
    assert len(read_family(out)) == 3
    assert run(capsys, "shift", str(tri))[0] == EXIT_USAGE


def test_base_command(tmp_path, capsys):
    path = tmp_path / "e.txt"
    log = tmp_path / "log.jsonl"
    run(capsys, "construct", "--name", "E", "--r", "3", "--n", "3", "--s", "1", "--out", str(path))
    code, out, _ = run(capsys, "--json", "base", str(path), "--s", "1", "--log", str(log))
    res = body(out)["results"]
    assert code == EXIT_OK and all(res["checks"].values())
    assert len(log.read_text().splitlines()) == res["shrink_attempts"]


def test_search_command(tmp_path, capsys):
    out = tmp_path / "wit.txt"
    code, text, _ = run(capsys, "--json", "search", "--sizes", "3,2,2", "--s", "1", "--out", str(out))
    res = body(text)["results"]
    assert code == EXIT_OK and res["optimum"] == 5 and res["exhaustive"]
    assert len(read_family(out)) == 5
    res = body(run(capsys, "--json", "search", "--uniform", "--r", "5", "--t", "1")[1])["results"]
    assert res["optimum"] == 4 and res["all_witnesses_named"]
    assert run(capsys, "search", "--r", "3", "--n", "2", "--s", "2")[0] == EXIT_USAGE


def test_search_budget_warns(capsys):
    code, _, err = run(capsys, "search", "--r", "4", "--n", "3", "--s", "2", "--budget", "20")
    assert code == EXIT_OK and "warning" in err


def test_verify_all_n(capsys):
    code, out, _ = run(capsys, "--json", "verify-theorems", "--suite", "all-n", "--max-vectors", "100")
    rows = body(out)["results"]
    assert code == EXIT_OK
    assert rows and all(r["verdict"] == "EQUAL" for r in rows)


def test_verify_uniform(capsys):
    code, out, _ = run(capsys, "--json", "verify-theorems", "--suite", "uniform", "--max-r", "6")
    rows = body(out)["results"]
    assert code == EXIT_OK and len(rows) == 1 + 2 + 3 + 4
    assert all(r["verdict"] == "EQUAL" and not r["contradiction"] for r in rows)


def test_formula_rows():
    rows = formula_rows()
    i1 = [r for r in rows if r["check"].startswith("I1")]
    assert len(i1) == 10 and all(r["result"] == "PASS" for r in i1)
    ties = {r["params"]["r"]: r for r in rows if "tie" in r["check"]}
    assert ties[4]["result"] == "PASS"
    # the two branches never tie at r=6, t=2
    assert ties[6]["result"] == "FAIL" and "17 vs K branch 20" in ties[6]["note"]


def test_formulas_suite_exit_code(capsys):
    code, _, _ = run(capsys, "verify-theorems", "--suite", "formulas")
    assert code == EXIT_CONTRADICTION


def test_report_bodies_are_deterministic(capsys):
    argv = ["--json", "--seed", "3", "construct", "--name", "E", "--r", "3", "--n", "3", "--s", "2", "--relabel"]
    first = json.loads(run(capsys, *argv)[1])
    second = json.loads(run(capsys, *argv)[1])
    assert json.dumps(first["body"], sort_keys=True) == json.dumps(second["body"], sort_keys=True)
    assert set(first["header"]) == {"timestamp", "wall_time_s", "versions"}
    assert first["body"]["schema"] == "partite-ekr.report/1"


def test_text_report_body_is_byte_stable(capsys):
    argv = ["verify-theorems", "--suite", "all-n", "--max-vectors", "30"]
    a = [ln for ln in run(capsys, *argv)[1].splitlines() if not ln.startswith("#")]
    b = [ln for ln in run(capsys, *argv)[1].splitlines() if not ln.startswith("#")]
    assert a == b and any("EQUAL" in ln for ln in a)


def test_usage_errors(capsys):
    assert run(capsys)[0] == EXIT_USAGE
    assert run(capsys, "construct", "--name", "W_r", "--r", "3")[0] == EXIT_USAGE
    assert run(capsys, "--help")[0] == EXIT_OK


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "partite_ekr", "--json", "search", "--r", "3", "--n", "2", "--s", "1"],
        check=True, capture_output=True, text=True,
    )
    assert json.loads(result.stdout)["body"]["results"]["optimum"] == 4


def test_environment_limit_overrides_large_n_default(capsys, monkeypatch):
    monkeypatch.setenv("PARTITE_EKR_MAX_NODES", "5")
    argv = ["--json", "verify-theorems", "--suite", "large-n", "--max-n", "3", "--max-r", "3", "--max-vectors", "27"]
    code, out, err = run(capsys, *argv)
    rows = body(out)["results"]
    assert code == EXIT_OK and rows
    assert all(r["nodes"] <= 6 for r in rows)
    assert any(not r["exhaustive"] for r in rows) and "inconclusive" in err
