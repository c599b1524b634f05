import io
import json
import subprocess
import sys

import pytest

from blchang.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("argv,expected", [
    (("eval", "LukStd", "uplus(p,q)", "p=1/5", "q=3/10"), "1/2"),
    (("eval", "G(2)", "p -> p", "p=0"), "1"),
    (("eval", "C", "!(p)", "p=a3"), "b3"),
    (("eval", "V", "p & q", "p=pos 1/2", "q=neg 1/4"), "neg 1/2"),
    (("eval", "C ++ LukStd", "uplus(p, q)", "p=c0:a2", "q=c1:1/3"), "c1:1/3"),
])
def test_eval(argv, expected):
    code, out, _ = run(*argv)
    assert code == 0 and out.strip() == expected


def test_check_exit_codes():
    code, out, _ = run("check", "LukStd", "cha")
    assert code == 1 and out.startswith("Fails on LukStd: x=17/64")
    code, out, _ = run("check", "LukStd", "cha", "--at", "x=2/5")
    assert code == 1 and "x=2/5 gives lhs=3/5, rhs=0" in out
    code, out, _ = run("check", "C", "cha", "--chang-bound", "50", "--samples", "100")
    assert code == 0 and "up to source" in out
    code, out, _ = run("check", "MV(4)", "a4")
    assert code == 0 and "decided" in out


def test_check_sum_p0_machine():
    code, out, _ = run("--machine", "--samples", "300", "check", "C ++ LukStd", "p0")
    rec = json.loads(out)
    assert code == 0 and rec["verdict"] == "Holds" and rec["claim"] == "p0"
    assert rec["elapsed_ms"] is None


def test_check_sources():
    code, out, _ = run("check", "LukStd", "cha", "--source", "grid", "--denom-bound", "10")
    assert code == 1 and "x=3/10" in out and "(Grid(10))" in out
    code, out, _ = run("check", "LukStd", "x = x", "--source", "exhaustive")
    assert code == 2


def test_counterexample():
    code, out, _ = run("counterexample", "C ++ LukStd", "cha")
    assert code == 1 and "x=c1:1/2 gives lhs=1, rhs=c1:0" in out
    code, out, _ = run("counterexample", "G(3)", "!!x = x")
    assert code == 1 and "x=1/2 gives lhs=1, rhs=1/2" in out
    code, _, _ = run("counterexample", "V", "x = x", "--samples", "50", "--denom-bound", "4")
    assert code == 0


def test_embed():
    code, out, _ = run("embed", "C", "a0..a5,b0..b5", "V")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "b0 -> neg 1" and lines[1] == "b1 -> neg 15/16"
    code, out, _ = run("embed", "C", "a0..a5,b0..b5", "V", "--ratio", "1/2")
    assert code == 0 and "a3 -> pos 1/8" in out
    code, out, _ = run("embed", "G(2)", "0,1", "C")
    assert code == 0 and out.split() == ["0", "->", "b0", "1", "->", "a0"]
    code, out, _ = run("embed", "LukStd", "0,2/5,3/5,1", "V", "--closure")
    assert code == 1 and out.startswith("NotFoundUpToBudget")
    code, out, _ = run("--machine", "embed", "LukStd", "0,1/3,2/3,1", "MV(5)")
    assert code == 1 and json.loads(out)["decided"] is True


def test_embed_ratio_misuse():
    code, _, err = run("embed", "LukStd", "0,1", "V", "--ratio", "1/2")
    assert code == 2 and "--ratio" in err


def test_algebra_commands():
    code, out, _ = run("algebra", "list")
    assert code == 0 and out.splitlines()[0].startswith("C ")
    code, out, _ = run("--machine", "algebra", "describe", "ProdStd")
    rec = json.loads(out)
    assert rec["components"] == ["MV(2)", "Canc"] and rec["bottom"] == "0"
    code, out, _ = run("algebra", "describe", "Canc")
    assert "bottom        -" in out


@pytest.mark.parametrize("argv", [
    ("eval", "Luk", "p"),
    ("eval", "LukStd", "p ->", "p=1"),
    ("eval", "LukStd", "p", "p=3/2"),
    ("eval", "LukStd", "p & q", "p=1/2"),
    ("eval", "Canc", "p", "p=1/2"),
    ("check", "LukStd", "x = = y"),
    ("eval", "LukStd", "p", "p"),
    ("nonsense",),
])
def test_errors_exit_two(argv):
    code, _, err = run(*argv)
    assert code == 2


def test_machine_error_record():
    code, out, _ = run("--machine", "eval", "LukStd", "p", "p=2")
    assert code == 2 and json.loads(out)["error"] == "EncodingError"


def test_flags_after_subcommand_and_hex_seed():
    code1, out1, _ = run("check", "V", "cha", "--source", "random", "--samples", "20", "--seed", "0x10")
    code2, out2, _ = run("--seed", "16", "--samples", "20", "check", "V", "cha", "--source", "random")
    assert code1 == code2 == 0 and out1 == out2 and "seed=0x10" in out1


def test_timing_flag_adds_elapsed():
    _, out, _ = run("--machine", "--timing", "check", "G(3)", "inv")
    assert isinstance(json.loads(out)["elapsed_ms"], float)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "blchang", "eval", "LukStd", "p -> q", "p=7/10", "q=3/10"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "3/5"
