"""End-to-end tests of the command line interface."""
import json
import subprocess
import sys

import pytest

from sumloc.cli import main


def records(out: str) -> list[dict]:
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def outputs(out: str) -> dict:
    return {r["name"]: r["value"] for r in records(out) if r["type"] == "output"}


def summary(out: str) -> dict:
    return records(out)[-1]


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "ap10": "latticeset 1\n" + "".join(f"{i}\n" for i in range(10)),
        "two": "latticeset 1\n0\n1\n2\n10\n11\n12\n",
        "hard": "latticeset 1\n0\n3\n7\n8\n15\n19\n20\n",
        "prog": "convexprog 1 1 symmetric\n2 1\n2 -1\n1/10\nbox 1 1\n0\n3/20\n",
        "pts": "points 1\n0\n1\n2001/1000\n",
        "ivs": "intervals\n0 1\n10 11\n",
        "bad": "latticeset 1\n1/2\n",
    }.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    paths["dir"] = tmp_path
    return paths


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr()


def test_doubling(capsys, files):
    code, cap = run(capsys, ["doubling", "--in", files["ap10"]])
    assert code == 0
    assert outputs(cap.out)["doubling"] == "19/10"
    assert summary(cap.out) == {"assertions": summary(cap.out)["assertions"], "exit": 0, "pass": True,
                                "type": "summary"}


def test_cover(capsys, files):
    code, cap = run(capsys, ["cover", "--in", files["two"], "--d", "1", "--t", "2"])
    out = outputs(cap.out)
    assert code == 0
    assert out["size"] == "6" and out["optimal"] is True and out["X"] == ["0", "10"]


def test_cover_budget_exceeded(capsys, files):
    code, cap = run(capsys, ["cover", "--in", files["hard"], "--d", "2", "--t", "3", "--budget", "5"])
    assert code == 3
    assert outputs(cap.out)["optimal"] is False
    assert summary(cap.out)["exit"] == 3


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["doubling", "--in", "/nonexistent/file"],
    ["cover", "--t"],
    ["example", "house", "--params", "delta=1"],
    ["example", "house", "--params", "novalue"],
])
def test_usage_errors(capsys, argv):
    code, cap = run(capsys, argv)
    assert code == 2
    assert cap.err


def test_malformed_input(capsys, files):
    code, cap = run(capsys, ["doubling", "--in", files["bad"]])
    assert code == 2 and "integers" in cap.err


def test_house_verify_reports_mismatch(capsys):
    code, cap = run(capsys, ["verify-example", "house", "--params", "t=1", "delta=1/10"])
    assert code == 1
    failed = {r["name"]: (r["lhs"], r["rhs"]) for r in records(cap.out)
              if r["type"] == "assertion" and not r["pass"]}
    assert failed == {"measure (formula)": ("31/10", "3"), "sumset_measure (formula)": ("52/5", "10")}


def test_example_round_trip(capsys, files):
    d = files["dir"]
    set_path, pred_path = str(d / "cone.set"), str(d / "cone.json")
    code, _ = run(capsys, ["example", "cone", "--params", "k=2", "t=3", "--out", set_path,
                           "--predictions", pred_path])
    assert code == 0
    code, cap = run(capsys, ["verify-example", "--in", set_path, "--predictions", pred_path])
    assert code == 0
    direct, _ = run(capsys, ["verify-example", "cone", "--params", "k=2", "t=3"])
    assert direct == 0
    assert json.load(open(pred_path))["name"] == "cone"


def test_output_is_deterministic(capsys, files):
    argv = ["cover", "--in", files["two"], "--d", "1", "--t", "2"]
    _, a = run(capsys, argv)
    _, b = run(capsys, argv)
    assert a.out == b.out


def test_merge_fixture(capsys, files):
    out_path = str(files["dir"] / "merged.txt")
    code, cap = run(capsys, ["merge", "--in", files["prog"], "--s", "1", "--l0", "1", "--out", out_path])
    assert code == 0
    assert outputs(cap.out)["m"] == "4"
    assert open(out_path).read().endswith("box 1 2\n0\n3/20\n2/5\n")


def test_snap(capsys, files):
    code, cap = run(capsys, ["snap", "--in", files["pts"], "--radius", "1/100"])
    assert code == 0
    assert all(r["pass"] for r in records(cap.out) if r["type"] == "assertion")


@pytest.mark.parametrize("argv", [
    ["check", "freiman3k4", "--in", "{ap10}"],
    ["check", "bigstep", "--values", "0,10,9,8,7,6,5,4,3,2,1", "--c", "1", "--N", "5"],
    ["check", "secondorder", "--x", "1", "--y", "2", "--l", "3"],
    ["hull", "--in", "{ivs}"],
    ["ruzsa", "--in", "{ivs}", "--with", "{ivs}"],
    ["sumset", "--in", "{ap10}"],
    ["suite", "--only", "1", "--quiet"],
])
def test_subcommands_succeed(capsys, files, argv):
    argv = [a.format(**files) for a in argv]
    code, cap = run(capsys, argv)
    assert code == 0, cap.err
    assert summary(cap.out)["pass"] is True


def test_console_script_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "sumloc.cli", "doubling", "--in", files["ap10"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert outputs(proc.stdout)["doubling"] == "19/10"
