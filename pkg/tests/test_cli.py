import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from lieorder.cli import EXIT_DATA, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main

DATA = Path(__file__).resolve().parents[1] / "src" / "lieorder" / "data" / "weyl_classes.json"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


@pytest.mark.parametrize("argv,expected", [
    (("ngm", "G2", "6"), "7"),
    (("ngm", "E8", "2"), "3"),
    (("ngm", "F4", "2", "--classes", "enumerate"), "3"),
    (("ngms", "G2", "12", "7"), "5"),
    (("ngms", "F4", "2", "2"), "2"),
    (("oracle", "G2", "6"), "7"),
    (("oracle", "G2", "3", "3"), "2"),
])
def test_values(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK and out == expected


def test_json_output(capsys):
    code, out, _ = run(capsys, "--format", "json", "ngm", "G2", "12")
    assert code == EXIT_OK and json.loads(out) == {"group": "G2", "m": 12, "N": 19}
    code, out, _ = run(capsys, "--format", "json", "ngm", "G2", "--table")
    assert json.loads(out)["period"] == 6


def test_tables(capsys):
    code, out, _ = run(capsys, "ngm", "G2", "--table")
    assert code == EXIT_OK and "(m^2+6m+12)/12" in out
    code, out, _ = run(capsys, "ngms", "G2", "--column", "7")
    assert code == EXIT_OK and "(m^2-9m+24)/12" in out
    code, out, _ = run(capsys, "ngms", "G2", "--all")
    assert code == EXIT_OK and len(out.splitlines()) == 7


@pytest.mark.parametrize("argv", [
    ("ngm", "G2"),
    ("ngm", "G2", "0"),
    ("ngm", "X9", "2"),
    ("ngm", "G2", "3", "--table"),
    ("ngms", "G2", "3"),
    ("ngms", "G2", "--column", "8"),
    ("ngms", "E6", "2", "2"),
    ("ngm", "E7", "2", "--classes", "enumerate"),
    ("oracle", "F4", "7"),
    ("verify", "--criterion", "99"),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and err


def test_out_of_scope_message(capsys):
    code, _, err = run(capsys, "ngms", "E6", "--all")
    assert code == EXIT_USAGE and "infeasible" in err


def test_verify_single_criterion(capsys):
    code, out, _ = run(capsys, "verify", "--criterion", "2")
    assert code == EXIT_OK
    assert "criterion  2 PASS" in out


def test_verify_reports_mismatch(capsys, monkeypatch):
    from lieorder import verify
    from lieorder.verify import Mismatch

    monkeypatch.setitem(verify.CRITERIA, 2, ("forced", lambda c, r: [Mismatch(2, "forced")]))
    code, out, _ = run(capsys, "verify", "--criterion", "2")
    assert code == EXIT_MISMATCH and "FAIL" in out


def test_corrupted_class_data(tmp_path):
    data = json.loads(DATA.read_text())
    data["groups"][0]["classes"][4]["size"] += 1
    bad = tmp_path / "classes.json"
    bad.write_text(json.dumps(data))
    proc = subprocess.run(
        [sys.executable, "-m", "lieorder", "ngm", "G2", "6"],
        env={**os.environ, "LIEORDER_CLASS_DATA": str(bad)},
        capture_output=True, text=True,
    )
    assert proc.returncode == EXIT_DATA
    assert "sizes do not sum" in proc.stderr
