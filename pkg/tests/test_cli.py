from __future__ import annotations

import json
from pathlib import Path

import jsonschema
import pytest

from modisom import catalog
from modisom.cli import main

SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "report-schema.json").read_text())
SINGLE = ["info", "series", "fingerprint", "algebra", "check-hypotheses", "extract"]
PAIR = ["compare", "verify-theorem-b", "verify-theorem-a"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report, out


@pytest.mark.parametrize("name", catalog.builtin_names())
def test_every_subcommand_on_every_builtin(capsys, name):
    ref = f"builtin:{name}"
    for cmd in SINGLE:
        code, report, _ = run(capsys, cmd, ref)
        assert code in (0, 2, 3), (cmd, report)
        assert report["command"] == cmd and report["inputs"] == [ref]
    for cmd in PAIR:
        code, report, _ = run(capsys, cmd, ref, ref)
        assert code in (0, 2, 3), (cmd, report)
        if code == 0 and cmd != "compare":
            assert report["result"]["verdict"] == "isomorphic"


def test_list(capsys):
    code, report, _ = run(capsys, "list")
    assert code == 0
    assert {r["name"] for r in report["result"]["builtins"]} == set(catalog.builtin_names())


def test_fingerprint_cyclic(capsys):
    code, report, _ = run(capsys, "fingerprint", "builtin:cyclic:27")
    assert code == 0
    assert report["result"]["nilpotency_class"]["value"] == 1
    assert report["result"]["d"]["value"] == 0


def test_compare_five_seven(capsys):
    code, report, _ = run(capsys, "compare", "builtin:G5_7_1599", "builtin:G5_7_1734")
    assert code == 0
    assert report["result"]["verdict"] == "indistinguishable"


def test_algebra_heisenberg(capsys):
    code, report, _ = run(capsys, "algebra", "builtin:heisenberg", "--max-dim", "100")
    r = report["result"]
    assert code == 0 and r["dim_S"] == 10 and r["d_group"] == r["d_algebra"] == 2


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "info", "builtin:nope")[0] == 2
    assert run(capsys, "extract", "builtin:modular")[0] == 2
    assert run(capsys, "algebra", "builtin:heisenberg", "--max-dim", "5")[0] == 3
    assert run(capsys, "--max-algebra-dim", "5", "algebra", "builtin:heisenberg")[0] == 3
    assert run(capsys, "verify-theorem-a", "builtin:heisenberg", "builtin:heisenberg")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, report, _ = run(capsys, "info", str(bad))
    assert code == 2 and report["error"]["type"] == "ParseError"
    assert main(["no-such-command"]) == 2
    assert main([]) == 2


def test_file_input(capsys, tmp_path):
    path = tmp_path / "h.json"
    catalog.save(catalog.builtin("heisenberg", 5), path)
    code, report, _ = run(capsys, "info", str(path))
    assert code == 0 and report["result"]["order"] == 125


def test_seed_and_flags_recorded(capsys):
    code, report, _ = run(capsys, "info", "builtin:G5_7_1599", "--seed", "7", "--max-order", "100")
    assert code == 0
    assert report["settings"] == {"seed": 7, "max_order": 100, "max_algebra_dim": 3000}
    assert report["result"]["consistency"]["mode"] == "sampled"


@pytest.mark.parametrize("argv", [
    ["info", "builtin:G5_7_1766", "--seed", "3"],
    ["verify-theorem-b", "builtin:free_class3_rank2", "builtin:free_class3_rank2"],
    ["selftest", "--level", "quick"],
    ["compare", "builtin:mini_1", "builtin:mini_2"],
])
def test_byte_identical_reruns(capsys, argv):
    _, _, a = run(capsys, *argv)
    _, _, b = run(capsys, *argv)
    assert a == b


def test_selftest_quick(capsys):
    code, report, _ = run(capsys, "selftest", "--level", "quick")
    assert code == 0 and report["result"]["passed"]
