import csv
import io

import pytest

from rted.cli import main
from rted.experiments import similarity_join
from rted.index import build_index
from rted.shapes import gen_shape
from rted.strategy import opt_strategy


@pytest.fixture
def files(tmp_path):
    def make(**named):
        out = {}
        for name, text in named.items():
            path = tmp_path / name
            path.write_text(text, encoding="utf-8")
            out[name] = str(path)
        return out
    return make


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_examples(files, capsys):
    f = files(a="{a{b}{c}}", b="{a{b}}")
    assert run(["compute", f["a"], f["b"]], capsys)[:2] == (0, "1\n")
    for algo in ("rted", "zhang-l", "zhang-r", "klein-h", "demaine-h", "brute"):
        assert run(["compute", f["a"], f["a"], "--algo", algo], capsys)[:2] == (0, "0\n")


def test_compute_costs_and_report(files, capsys):
    f = files(a="{a{b}{c}}", b="{a{b}}")
    code, out, _ = run(["compute", f["a"], f["b"], "--costs", "2.5,1,1", "--report", "csv"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "2.5"
    row = next(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    assert row["algo"] == "rted" and row["distance"] == "2.5" and int(row["subproblems"]) > 0
    assert float(row["total_time_ms"]) >= float(row["strategy_time_ms"]) + float(row["distance_time_ms"]) - 1e-3


def test_compute_errors(files, capsys):
    f = files(good="{a}", bad="{a{b}")
    code, out, err = run(["compute", f["good"], f["bad"]], capsys)
    assert code == 2 and out == "" and "byte 5" in err
    assert run(["compute", f["good"], "/nonexistent/x"], capsys)[0] == 2
    assert run(["compute", f["good"], f["good"], "--costs", "1,2"], capsys)[0] == 2
    assert run(["compute", f["good"], f["good"], "--algo", "nope"], capsys)[0] == 2


def test_brute_force_guard_exit_code(files, capsys):
    big = "{x" * 401 + "}" * 401
    f = files(big=big, small="{x}")
    code, _, err = run(["compute", f["big"], f["small"], "--algo", "brute"], capsys)
    assert code == 3 and "limit" in err


def test_strategy_csv(files, tmp_path, capsys):
    f = files(F="{c{a}{b}}", G="{b{a}}")
    out_path = tmp_path / "s.csv"
    code, _, err = run(["strategy", f["F"], f["G"], "--out", str(out_path)], capsys)
    assert code == 0 and "cost 8" in err
    rows = list(csv.DictReader(out_path.open()))
    assert {"v": "3", "w": "2", "side": "LeftTree", "kind": "Heavy"} in rows


def test_count(capsys):
    code, out, _ = run(["count", "--shapes", "left-branch", "--sizes", "3", "--algos", "rted"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    F = build_index(gen_shape("lb", 3))
    assert rows == [{"shape": "left-branch", "size": "3", "algo": "rted", "subproblems": str(opt_strategy(F, F).cost)}]


def test_count_single_node_and_execute(capsys):
    code, out, _ = run(["count", "--shapes", "fb,random", "--sizes", "1", "--execute"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 10
    assert all(r["subproblems"] == "1" == r["executed"] for r in rows)
    code, out, _ = run(["count", "--shapes", "lb,rb,zz,fb,mixed,random", "--sizes", "21,51", "--execute"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 60 and all(r["subproblems"] == r["executed"] for r in rows)
    # deterministic apart from timings, and there are none here
    assert run(["count", "--shapes", "lb,rb,zz,fb,mixed,random", "--sizes", "21,51", "--execute"], capsys)[1] == out


def test_count_bad_arguments(capsys):
    assert run(["count", "--shapes", "lb", "--sizes", "4"], capsys)[0] == 2
    assert run(["count", "--shapes", "spiral", "--sizes", "3"], capsys)[0] == 2
    assert run(["count", "--sizes", "x"], capsys)[0] == 2


def test_join(tmp_path, capsys):
    d = tmp_path / "trees"
    d.mkdir()
    (d / "one.txt").write_text("{a{b}}")
    code, out, err = run(["join", "--dir", str(d)], capsys)
    assert code == 0 and out == "file_a,file_b,distance\n" and err.startswith("0 of 0 pairs")
    (d / "two.txt").write_text("{a{b}}")
    (d / "three.txt").write_text("{x{y}{z}}")
    code, out, _ = run(["join", "--dir", str(d), "--tau", "1"], capsys)
    assert out.splitlines() == ["file_a,file_b,distance", "one.txt,two.txt,0"]
    base = run(["join", "--dir", str(d), "--algo", "rted,zhang-l"], capsys)[1]
    assert run(["join", "--dir", str(d), "--algo", "rted,zhang-l", "--threads", "3"], capsys)[1] == base
    assert len(base.splitlines()) == 4
    assert run(["join", "--dir", str(tmp_path / "missing")], capsys)[0] == 2


def test_join_threshold_is_strict():
    trees = {"a": gen_shape("lb", 3), "b": gen_shape("lb", 5)}
    assert similarity_join(trees, tau=2).pairs == []
    assert similarity_join(trees, tau=2.001).pairs == [("a", "b", 2.0)]


def test_generate(tmp_path, capsys):
    assert run(["generate", "--shape", "left-branch", "--size", "3"], capsys)[:2] == (0, "{x{x}{x}}\n")
    a, b = tmp_path / "a", tmp_path / "b"
    for path in (a, b):
        assert run(["generate", "--shape", "random", "--size", "300", "--seed", "7", "--out", str(path)], capsys)[0] == 0
    assert a.read_text() == b.read_text()
    out = run(["generate", "--shape", "fb", "--depth", "2", "--alphabet", "ab"], capsys)[1]
    assert out.count("{") == 7
    assert run(["generate", "--shape", "lb", "--size", "4"], capsys)[0] == 2
    assert run(["generate", "--shape", "lb", "--depth", "2"], capsys)[0] == 2
    assert run(["generate", "--shape", "lb"], capsys)[0] == 2


def test_ingest(files, capsys):
    f = files(**{"doc.xml": "<a><b/></a>", "bad.xml": "<a><b></a>"})
    assert run(["ingest", "--xml", f["doc.xml"]], capsys)[:2] == (0, "{a{b}}\n")
    assert run(["ingest", "--xml", f["bad.xml"]], capsys)[0] == 2


def test_no_command(capsys):
    assert run([], capsys)[0] == 2
