"""Command-line interface: outputs and exit codes."""

from __future__ import annotations

import json

import pytest

from cubeprop.cli import main
from cubeprop.kleene import program_code
from cubeprop.presheaf import closure, yoneda
from cubeprop.presheaf.io import dumps, mor_to_dict


def test_cube_homs(capsys):
    assert main(["cube", "homs", "1", "1"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["1->1:[c0]", "1->1:[c1]", "1->1:[v0]", "# 3 morphisms [1] -> [1]"]
    assert main(["cube", "homs", "2", "2", "--count"]) == 0
    assert capsys.readouterr().out.strip() == "# 16 morphisms [2] -> [2]"


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as err:
        main(["cube", "homs", "-1", "1"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["verify", "--only", "nonsense"])
    assert err.value.code == 2


def test_generate_then_validate(tmp_path, capsys):
    path = tmp_path / "y.json"
    assert main(["generate", "representable", "--n", "1", "-o", str(path)]) == 0
    assert json.loads(path.read_text())["trunc"] == 2
    assert main(["psh", "validate", str(path)]) == 0
    capsys.readouterr()


def test_validate_invalid_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"trunc": 1, "levels": {"0": ["a"], "1": ["p"]}, "action": '
                    '{"0->1:[c0]": {"p": "a"}, "0->1:[c1]": {"p": "a"}, '
                    '"1->0:[]": {"a": "q"}}}')
    assert main(["psh", "validate", str(path)]) == 1
    err = capsys.readouterr()
    assert "bad.json" in err.out + err.err


def test_verify_small_json(capsys):
    code = main(["verify", "--only", "cube-laws,extensional", "--count", "3",
                 "--json", "-", "-q"])
    assert code == 0
    captured = capsys.readouterr()
    doc = json.loads(captured.out)
    assert doc["schema"] == 1
    assert doc["summary"]["FAIL"] == 0
    assert {r["theorem"] for r in doc["records"]} == {"cube-laws", "extensional"}
    assert "total:" in captured.err


def test_replay_fail_instance(tmp_path, capsys):
    A = closure(yoneda(1, 2), [(0, "[c0]")])
    doc = {"theorem": "internalise", "instance": "endpoint of y[1]",
           "input": mor_to_dict(A.inclusion())}
    path = tmp_path / "fail.json"
    path.write_text(dumps(doc))
    assert main(["replay", str(path)]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_replay_pass_instance(tmp_path, capsys):
    y1 = yoneda(1, 2)
    doc = {"theorem": "negmono", "instance": "interval",
           "input": mor_to_dict(closure(y1, [(1, "[v0]")]).inclusion())}
    path = tmp_path / "ok.json"
    path.write_text(dumps(doc))
    assert main(["replay", str(path)]) == 0
    capsys.readouterr()


def test_replay_unknown_tag(tmp_path, capsys):
    path = tmp_path / "x.json"
    path.write_text('{"theorem": "nope"}')
    assert main(["replay", str(path)]) == 1
    assert "cannot replay" in capsys.readouterr().err


def test_reals_demo(capsys):
    assert main(["reals", "demo", "--real", "sqrt2", "--queries", "5"]) == 0
    out = capsys.readouterr().out
    assert "# consistent: True" in out
    assert main(["reals", "demo", "--real", "1/2"]) == 0
    capsys.readouterr()
    assert main(["reals", "demo", "--real", "abc"]) == 2


@pytest.mark.parametrize("fn,code,exit_code", [
    ("succ", "builtin:successor", 0),
    ("id", "builtin:successor", 1),
    ("id", "builtin:id_even", 0),      # fuel runs out on odd inputs: inconclusive
    ("nosuch", "builtin:identity", 2),
    ("id", "builtin:nosuch", 2),
])
def test_ect_check_exit_codes(fn, code, exit_code, capsys):
    assert main(["ect", "check", "--fn", fn, "--code", code, "--fuel", "500"]) == exit_code
    capsys.readouterr()


def test_ect_check_json_and_file(tmp_path, capsys):
    src = tmp_path / "double.rm"
    src.write_text("loop: DECJZ 0 out\n INC 1\n INC 1\n JMP loop\n"
                   "out: DECJZ 1 end\n INC 0\n JMP out\nend: HALT\n")
    assert main(["ect", "check", "--fn", "double", "--code", str(src), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "PASS" and len(doc["points"]) == 10


def test_ect_programs(capsys):
    assert main(["ect", "programs"]) == 0
    out = capsys.readouterr().out
    assert f"identity     {program_code('identity')}" in out
