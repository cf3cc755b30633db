import json
import subprocess
import sys
from pathlib import Path

import pytest

from wirelab import ElectricalConfig, build_standard, query
from wirelab.cli import main

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err
    return _run


@pytest.fixture
def net_file(tmp_path, run):
    def _make(values, algorithm="standard"):
        path = tmp_path / f"{algorithm}-{'_'.join(map(str, values))}.json"
        code, _, err = run("build", "--input", ",".join(map(str, values)),
                           "--algorithm", algorithm, "--out", path)
        assert code == 0, err
        return path
    return _make


def test_build_then_stats(run, net_file):
    path = net_file([5, 2, 1, 3, 4])
    code, out, _ = run("stats", "--net", path, "--json")
    assert code == 0
    stats = json.loads(out)
    assert stats["wire_count"] == 31 and stats["max_row"] == 15 and stats["kind"] == "standard"


def test_query_decision(run, net_file):
    code, out, _ = run("query", "--net", net_file([2, 3]), "--target", 5, "--model", "decision", "--json")
    assert code == 0
    assert json.loads(out)["results"] == [{"query": 5, "decision": True}]


def test_query_physical(run, net_file):
    code, out, _ = run("query", "--net", net_file([5, 2, 3]), "--target", 5, "--model", "physical", "--json")
    [res] = json.loads(out)["results"]
    assert res["currents"] == [pytest.approx(0.4, abs=1e-9)]
    assert res["estimated_count"] == pytest.approx(2.0, abs=1e-9)


def test_query_text_output(run, net_file):
    code, out, _ = run("query", "--net", net_file([5, 2, 3]), "--target", "5,11")
    assert code == 0
    assert out.splitlines() == [
        "q=5 decision=true exact_count=2 currents=[0.4] estimated_count=2",
        "q=11 decision=false exact_count=0 currents=[0] estimated_count=None",
    ]


def test_query_matches_library(run, net_file):
    path = net_file([4, 1, 5, 2], "reduced")
    code, out, _ = run("query", "--net", path, "--target", ",".join(map(str, range(1, 14))),
                       "--voltage", 2.5, "--unit-resistance", 0.3, "--json")
    from wirelab.storage import load
    net = load(path.read_bytes())
    cfg = ElectricalConfig(voltage=2.5, unit_resistance=0.3)
    expected = [query(net, q, cfg).to_dict() for q in range(1, 14)]
    assert json.loads(out)["results"] == json.loads(json.dumps(expected))


def test_env_overrides(run, net_file, monkeypatch):
    path = net_file([1, 4])
    monkeypatch.setenv("WIRELAB_VOLTAGE", "10")
    monkeypatch.setenv("WIRELAB_RU", "2")
    _, out, _ = run("query", "--net", path, "--target", 5, "--model", "physical", "--json")
    assert json.loads(out)["results"][0]["currents"] == [pytest.approx(1.0)]
    _, out, _ = run("query", "--net", path, "--target", 5, "--model", "physical", "--json", "--voltage", 5)
    assert json.loads(out)["results"][0]["currents"] == [pytest.approx(0.5)]
    monkeypatch.setenv("WIRELAB_RU", "lots")
    code, _, err = run("query", "--net", path, "--target", 5)
    assert code == 1 and "WIRELAB_RU" in err


def test_count_on_decision_only_network_is_domain_error(run, net_file):
    path = net_file([5, 1, 1, 3, 1], "multiset-opt")
    code, _, err = run("query", "--net", path, "--target", 4, "--model", "count")
    assert code == 2 and "counting unsupported" in err
    code, out, _ = run("query", "--net", path, "--target", 4, "--json")
    assert code == 0
    res = json.loads(out)["results"][0]
    assert res["decision"] is True and res["exact_count"] is None


def test_grow(run, net_file, tmp_path):
    out_path = tmp_path / "grown.json"
    code, _, _ = run("grow", "--net", net_file([4, 1, 5, 2], "reduced"), "--element", 3, "--out", out_path)
    assert code == 0
    _, out, _ = run("stats", "--net", out_path, "--json")
    assert json.loads(out)["wire_count"] == 16
    code, _, err = run("grow", "--net", net_file([1, 1], "multiset-opt"), "--element", 3, "--out", out_path)
    assert code == 2 and "growth unsupported" in err


def test_oracle(run):
    code, out, _ = run("oracle", "--input", "5,2,3", "--target", 5, "--witnesses", "--json")
    assert code == 0
    assert json.loads(out) == {"input": [5, 2, 3], "target": 5, "decision": True,
                               "count": 2, "witnesses": [[0], [1, 2]]}
    _, out, _ = run("oracle", "--input", "5,2,3", "--target", 5, "--witnesses")
    assert out.splitlines() == ["decision=true", "count=2", "  {5@0}", "  {2@1, 3@2}"]


def test_export(run, net_file, tmp_path):
    svg = tmp_path / "net.svg"
    assert run("export", "--net", net_file([1, 2]), "--format", "svg", "--out", svg)[0] == 0
    assert svg.read_text().count('class="wire"') == 3
    code, _, _ = run("export", "--net", net_file([1, 2]), "--format", "")
    assert code == 1


def test_compile_and_run(run, net_file, tmp_path):
    path = net_file([5, 2, 1, 3, 4], "reduced")
    prog = tmp_path / "net.rwm"
    assert run("compile", "--net", path, "--out", prog)[0] == 0
    rebuilt = tmp_path / "rebuilt.json"
    assert run("run", "--program", prog, "--out", rebuilt)[0] == 0
    assert rebuilt.read_bytes() == path.read_bytes()
    prog.write_text("RWM 1\nINPUT 1,2\nKIND standard\nPLAN 0\nADD_WIRE id=0 len=2 attach=7 elem=1\n")
    code, _, err = run("run", "--program", prog)
    assert code == 2 and "undefined attachment" in err


@pytest.mark.parametrize("argv", [
    [],
    ["build"],
    ["build", "--input", "1,x"],
    ["build", "--input", "1", "--algorithm", "quantum"],
    ["query", "--net", "missing.json", "--target", "3"],
    ["query", "--net", "x.json", "--target", "0"],
])
def test_usage_errors_exit_1(run, argv):
    code, _, err = run(*argv)
    assert code == 1
    assert err


def test_domain_errors_exit_2(run, tmp_path):
    assert run("build", "--input", ",".join(["1"] * 25))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema_version": 1, "input": [1')
    code, _, err = run("stats", "--net", bad)
    assert code == 2 and "offset" in err


def test_golden_build_output(run):
    code, out, _ = run("build", "--input", "1,2", "--algorithm", "standard")
    assert code == 0
    assert out == (GOLDEN / "standard_1_2.json").read_text()


def test_golden_program(run, net_file):
    code, out, _ = run("compile", "--net", net_file([5, 1, 1, 3, 1], "multiset-opt"))
    assert out == (GOLDEN / "multiset_opt_5_1_1_3_1.rwm").read_text()


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "wirelab", "oracle", "--input", "4,1,5,2", "--target", "8"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.splitlines()[0] == "decision=true"
