"""Command-line behavior: JSON in, JSON out, documented exit codes."""

from __future__ import annotations

import json

import pytest

from hermforms.algebras import build_algebra
from hermforms.cli import main
from hermforms.forms import diag_form, form_to_json
from hermforms.serialize import dumps

QUAT = {"base": {"kind": "rationals"},
        "coefficients": {"kind": "quaternion", "a": -1, "b": -1}}
M2Q = {"base": {"kind": "rationals"}, "matrix_size": 2}


@pytest.fixture
def files(tmp_path):
    def write(name, payload):
        path = tmp_path / name
        path.write_text(dumps(payload))
        return str(path)

    H = build_algebra(QUAT)
    M = build_algebra(M2Q)
    return {
        "quat": write("quat.json", QUAT),
        "m2q": write("m2q.json", M2Q),
        "one": write("one.json", form_to_json(diag_form(H, 1, [H.one()]))),
        "skew": write("skew.json", form_to_json(
            diag_form(H, -1, [H.scalar_elem(H.quat.i())]))),
        "m2one": write("m2one.json", form_to_json(diag_form(M, 1, [M.one()]))),
        "m2hyp": write("m2hyp.json", form_to_json(
            diag_form(M, 1, [M.one(), -M.one()]))),
        "dir": tmp_path,
    }


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_sig_quaternion_unit_form(files, capsys):
    code, payload = run(capsys, ["sig", "--algebra", files["quat"],
                                 "--form", files["one"]])
    assert code == 0
    assert payload == {"signatures": {"0/+": 2}}


def test_sig_single_ordering(files, capsys):
    code, payload = run(capsys, ["sig", "--algebra", files["quat"],
                                 "--form", files["one"], "--ordering", "0/+"])
    assert code == 0
    assert payload == {"signatures": {"0/+": 2}}


def test_goldman_matrix_units(files, capsys):
    code, payload = run(capsys, ["goldman", "--algebra", files["m2q"]])
    assert code == 0
    assert payload["g_squared_is_one"] is True
    assert payload["sigma_fixed"] is True
    assert payload["terms"] == [[0, 0, "1"], [1, 2, "1"], [2, 1, "1"], [3, 3, "1"]]


def test_pair_outputs_center_form(files, capsys):
    code, payload = run(capsys, ["pair", "--algebra", files["quat"],
                                 "--form", files["one"],
                                 "--form2", files["one"]])
    assert code == 0
    assert payload["epsilon"] == 1
    assert payload["signatures"] == {"0/+": 4}
    gram = payload["form"]["gram"]
    assert [gram[i][i][0][0] for i in range(4)] == ["2", "2", "2", "2"]


def test_sylvester_subcommand(files, capsys):
    code, payload = run(capsys, ["sylvester", "--algebra", files["quat"],
                                 "--form", files["one"], "--ordering", "0/+"])
    assert code == 0
    assert payload["w"] == ["2", "2", "2", "2"]
    assert payload["u"] == ["2", "2", "2", "2"]
    assert payload["v"] == []
    assert payload["verification"] == "witt"


def test_decide_hyperbolic(files, capsys):
    code, payload = run(capsys, ["decide", "--algebra", files["m2q"],
                                 "--form", files["m2hyp"]])
    assert code == 0
    assert payload["verdict"] == "hyperbolic"


def test_decide_witt_equality(files, capsys):
    code, payload = run(capsys, ["decide", "--algebra", files["m2q"],
                                 "--form", files["m2one"],
                                 "--form2", files["m2one"]])
    assert code == 0
    assert payload["verdict"] == "equal"


def test_decide_undecided_exits_three(files, capsys):
    code, payload = run(capsys, ["decide", "--algebra", files["quat"],
                                 "--form", files["skew"]])
    assert code == 3
    assert payload["verdict"] == "undecided"


def test_plg_values(files, capsys):
    code, payload = run(capsys, ["plg", "--algebra", files["m2q"],
                                 "--form", files["m2hyp"]])
    assert code == 0 and payload == {"n": 0}
    code, payload = run(capsys, ["plg", "--algebra", files["quat"],
                                 "--form", files["one"]])
    assert code == 0 and payload == {"verdict": "not_torsion"}


def test_verify_suite_passes(files, capsys):
    code, payload = run(capsys, ["verify", "--suite", "pairing-assoc",
                                 "--seed", "42", "--iters", "10"])
    assert code == 0
    assert payload["passed"] is True
    assert payload["suite"] == "pairing-assoc"
    assert payload["seed"] == 42
    assert payload["failures"] == []


def test_verify_output_is_deterministic(files, capsys):
    argv = ["verify", "--suite", "witt-oracle-brute", "--seed", "3",
            "--iters", "12"]
    code1 = main(argv)
    out1 = capsys.readouterr().out
    code2 = main(argv)
    out2 = capsys.readouterr().out
    assert (code1, out1) == (code2, out2)


def test_usage_errors(files, capsys):
    assert main(["sig", "--algebra", str(files["dir"] / "nope.json"),
                 "--form", files["one"]]) == 2
    assert main(["verify", "--suite", "bogus"]) == 2
    assert main(["verify"]) == 2
    assert main(["sig", "--form", files["one"]]) == 2
    assert main(["sig", "--algebra", files["quat"]]) == 2
    capsys.readouterr()


def test_malformed_json_exits_two(files, capsys):
    bad = files["dir"] / "bad.json"
    bad.write_text("{not json")
    assert main(["sig", "--algebra", str(bad), "--form", files["one"]]) == 2
    capsys.readouterr()


def test_bad_ordering_exits_two(files, capsys):
    assert main(["sig", "--algebra", files["quat"], "--form", files["one"],
                 "--ordering", "nonsense"]) == 2
    capsys.readouterr()


def test_unknown_subcommand_exits_two(files, capsys):
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_library_error_exits_two(files, capsys):
    code = main(["sylvester", "--algebra", files["quat"],
                 "--form", files["skew"], "--ordering", "0/+"])
    assert code == 2
    err = capsys.readouterr().err
    assert "UseSkewPath" in err
