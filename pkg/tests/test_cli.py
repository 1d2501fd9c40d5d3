import json
import subprocess
import sys

import pytest

from sympferm.cli import main
from sympferm.qseries import DEN, QSeries, eta_power


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_branching_json(capsys):
    code, d = run_json(capsys, "branching", "--kind", "spo", "--m", "1", "--r", "1",
                       "--weight", "0", "--order", "12", "--format", "json")
    assert code == 0
    t = 12 * DEN
    expected = (QSeries({3: 1, 27: -1}, t + 1) * eta_power(-1, t)).truncate(t)
    assert QSeries.from_dict(d) == expected


def test_branching_csv(capsys):
    code, out = run(capsys, "branching", "--kind", "spo", "--m", "1", "--r", "1", "--order", "2",
                    "--format", "csv")
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert rows[0] == ["2", "1/1"]
    assert all(int(r[0]) < 2 * DEN for r in rows)


def test_remainder(capsys):
    code, out = run(capsys, "remainder", "--family", "sp", "--n", "1", "--list", "0,0,0,0")
    assert code == 0 and json.loads(out) == {"value": "-3/2"}


def test_decouple(capsys):
    code, d = run_json(capsys, "decouple", "--family", "sp", "--n", "2")
    assert code == 0 and d["found"] and d["verified"] and d["target"] == "j4"
    words = {w for w, _ in d["solution"]}
    assert all(set(w.strip(":").split()) <= {"j0", "j2"} for w in words)


def test_decouple_minimality(capsys):
    code, d = run_json(capsys, "decouple", "--family", "sp", "--n", "2", "--weight", "4")
    assert code == 1 and not d["found"]
    code, d = run_json(capsys, "decouple", "--family", "sp", "--n", "2", "--weight", "4", "--expect", "none")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ("decompose-check", "--kind", "gl", "--m", "1", "--r", "1", "--order", "5"),
    ("denominator-check", "--kind", "spo", "--m", "2", "--r", "2"),
    ("strong-gen", "--kind", "sp_j", "--n", "3", "--k", "1"),
    ("strong-gen", "--kind", "gl_h", "--n", "2", "--k", "2"),
    ("classical-check", "--family", "sp", "--n", "1", "--max-entry", "2"),
    ("freeness", "--family", "sp", "--n", "1", "--order", "10"),
    ("freeness", "--family", "gl", "--n", "1", "--order", "8"),
])
def test_verification_schema(capsys, argv):
    code, d = run_json(capsys, *argv)
    assert {"lhs", "rhs", "firstMismatch", "equal"} <= set(d)
    assert code == (0 if d["equal"] else 1)


def test_freeness_gl_reports_mismatch(capsys):
    code, d = run_json(capsys, "freeness", "--family", "gl", "--n", "1", "--order", "8")
    assert code == 1
    assert (d["mismatchWeight"], d["freeCount"], d["trueCount"]) == (6, "8/1", "6/1")


def test_character_and_invariant_dims(capsys):
    code, d = run_json(capsys, "character", "--series", "sp_orbifold", "--n", "1", "--order", "6")
    assert code == 0 and QSeries.from_dict(d).coefficients(offset=2)[:6] == [1, 0, 1, 1, 2, 2]
    code, d = run_json(capsys, "invariant-dims", "--group", "gl", "--n", "1", "--order", "6")
    assert d["dims"] == [1, 0, 1, 2, 3, 4, 6]


def test_lambda(capsys):
    assert run_json(capsys, "lambda", "--a", "0", "--b", "0", "--w", "1", "--c", "0") == (0, {"value": "-2/1"})


def test_branching_closed(capsys):
    code, d = run_json(capsys, "branching-closed", "--family", "gl", "--n", "1", "--order", "3")
    assert code == 0 and d["terms"][0][0] == 17


def test_output_is_deterministic(capsys):
    argv = ("denominator-check", "--kind", "gl", "--m", "2", "--r", "1", "--seed", "5")
    assert run(capsys, *argv) == run(capsys, *argv)
    _, a = run_json(capsys, *argv)
    _, b = run_json(capsys, "denominator-check", "--kind", "gl", "--m", "2", "--r", "1", "--seed", "6")
    assert a["points"] != b["points"]


@pytest.mark.parametrize("argv,flag", [
    (("branching", "--kind", "gl", "--m", "1", "--r", "1", "--weight", "1,1"), "--weight"),
    (("branching", "--kind", "gl", "--m", "1", "--r", "1", "--weight", "x"), "--weight"),
    (("remainder", "--family", "sp", "--n", "1", "--list", "a,b"), "--list"),
    (("branching", "--kind", "so", "--m", "1", "--r", "1"), "--kind"),
    (("branching", "--kind", "gl", "--m", "1", "--r", "1", "--order", "-1"), "--order"),
])
def test_usage_errors(capsys, argv, flag):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    assert exc.value.code == 2
    assert flag in capsys.readouterr().err


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sympferm", "remainder", "--family", "gl", "--n", "1",
                           "--list", "0,0", "--jlist", "0,0"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"value": "-2/1"}
