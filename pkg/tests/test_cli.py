import json

import pytest

from dglie.cli import FAIL, INPUT, OK, REFUSED, main


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def run_json(capsys, *argv):
    status, out, err = run(capsys, *argv, "--format", "json")
    return status, (json.loads(out) if out.strip() else None), err


def test_validate_catalog(capsys):
    status, out, _ = run(capsys, "validate", "heisenberg")
    assert status == OK and "valid" in out


def test_ce_cohomology_json(capsys):
    status, rep, _ = run_json(capsys, "ce", "sl2dual", "--cap", "3", "--degrees", "0..3")
    assert status == OK
    assert rep["betti"] == {"0": 1, "1": 0, "2": 0, "3": 1} and all(rep["stable"].values())


def test_missing_cap_is_an_input_error(capsys):
    status, _, err = run(capsys, "ce", "heisenberg", "--degrees", "0..3")
    assert status == INPUT and "--cap" in err


def test_bad_degree_range_is_an_input_error(capsys):
    assert run(capsys, "ce", "heisenberg", "--cap", "2", "--degrees", "3..1")[0] == INPUT


def test_certify_refuses_non_conilpotent(capsys):
    status, _, err = run(capsys, "certify", "sl2dual", "--check", "cobar-ce",
                         "--cap", "3", "--degrees", "0..2")
    assert status == REFUSED and "refused" in err


def test_certify_cobar_ce(capsys):
    status, rep, _ = run_json(capsys, "certify", "g2", "--check", "cobar-ce",
                              "--cap", "3", "--degrees", "0..2")
    assert status == OK and rep["status"] == OK


def test_local_system(capsys):
    assert run(capsys, "local-system", "--matrix", "[[0,1],[0,0]]")[0] == OK
    assert run(capsys, "local-system", "--matrix", "[[1,2]]")[0] == INPUT


def test_unknown_file_is_an_input_error(capsys):
    assert run(capsys, "validate", "no-such-structure")[0] == INPUT


def test_invalid_document_fails(capsys, tmp_path):
    doc = [{"kind": "lie-coalgebra", "name": "bad",
            "basis": [{"label": "x", "degree": 0}, {"label": "y", "degree": 0},
                      {"label": "z", "degree": 0}],
            "differential": [],
            "cobracket": [{"from": "z", "to": ["x", "y"], "coeff": "1"}]}]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    status, out, _ = run(capsys, "validate", str(path))
    assert status == FAIL and "coanticommutativity" in out


def test_float_coefficients_are_rejected(capsys, tmp_path):
    doc = [{"kind": "lie-coalgebra", "name": "f",
            "basis": [{"label": "x", "degree": 0}], "differential": [],
            "cobracket": [{"from": "x", "to": ["x", "x"], "coeff": 0.5}]}]
    path = tmp_path / "f.json"
    path.write_text(json.dumps(doc))
    assert run(capsys, "validate", str(path))[0] == INPUT


def test_json_output_is_deterministic_and_round_trips(capsys, tmp_path):
    argv = ("ce", "heisenberg", "--cap", "3", "--degrees", "0..3", "--module", "std")
    _, first, _ = run(capsys, *argv, "--format", "json")
    _, second, _ = run(capsys, *argv, "--format", "json")
    assert first == second
    rep = json.loads(first)
    path = tmp_path / "echo.json"
    path.write_text(json.dumps(rep["input"]["documents"]))
    _, third, _ = run(capsys, "ce", str(path), "--cap", "3", "--degrees", "0..3",
                      "--module", "std", "--format", "json")
    again = json.loads(third)
    assert again["input"]["documents"] == rep["input"]["documents"]
    assert {k: v for k, v in again.items() if k != "input"} == \
        {k: v for k, v in rep.items() if k != "input"}


@pytest.mark.parametrize("argv", [
    ("bar", "ext2", "--cap", "3", "--degrees=-3..0"),
    ("cobar", "g3", "--cap", "3", "--degrees", "0..3"),
    ("harrison", "ext2", "--cap", "3"),
    ("derham-hom", "twists", "--degree-bound", "4"),
    ("certify", "heisenberg", "--check", "pbw", "--cap", "3"),
])
def test_other_commands_succeed(capsys, argv):
    assert run(capsys, *argv)[0] == OK


def test_unstable_cohomology_exits_with_failure(capsys):
    status, out, _ = run(capsys, "ce", "heisenberg", "--module", "std", "--cap", "3",
                         "--degrees", "0..3")
    assert status == FAIL and "stable: no" in out
