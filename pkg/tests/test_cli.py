from __future__ import annotations

import json
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hexaspinor import cli, cover, norden, suites
from hexaspinor.tensors import random_complex, random_sl, residual

N = norden.build_norden_special()


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line.strip()]


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(cli.encode(obj)))
    return str(p)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([(4,), (2, 3), (2, 2, 2)]))
def test_tensor_json_round_trip(seed, shape):
    a = random_complex(np.random.default_rng(seed), shape)
    back = cli.decode_tensor(json.loads(cli.dumps(a)))
    assert np.array_equal(back, a)


def test_decode_rejects_malformed_tensors():
    for bad in ({"shape": [2]}, {"shape": [2], "entries": [[1, 0]]}, {"shape": [1], "entries": [[1]]}, [1, 2]):
        with pytest.raises(ValueError):
            cli.decode_tensor(bad)


def test_norden_table_entry(capsys):
    code, lines = _run(capsys, "tables", "--set", "norden6")
    assert code == 0
    eta = lines[0]["eta_up"]
    assert eta["shape"] == [6, 4, 4]
    assert eta["entries"][16 + 1] == [0.7071067811865475, 0.0]


@pytest.mark.parametrize("name", ["eta8", "realform", "octonion"])
def test_other_tables(capsys, name):
    code, lines = _run(capsys, "tables", "--set", name, "--sig", "3,3")
    assert code == 0 and len(lines) == 1


def test_realform_table_s_block(capsys):
    _, lines = _run(capsys, "tables", "--set", "realform", "--sig", "2,4")
    s = cli.decode_tensor(lines[0]["s"])
    assert np.array_equal(s.real, [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    assert lines[0]["signature"] == [2, 4]


def test_verify_all_passes(capsys):
    code, lines = _run(capsys, "verify", "all")
    assert code == 0
    checks = [ln for ln in lines if "check" in ln]
    assert checks and all(ln["pass"] and ln["residual"] < ln["threshold"] for ln in checks)
    assert {ln["suite"] for ln in lines if "checks" in ln} == set(suites.SUITES)


def test_verify_suite_flag_and_failure_exit(capsys):
    code, lines = _run(capsys, "verify", "--suite", "norden")
    assert code == 0 and all(ln["suite"] == "norden" for ln in lines)
    code, _ = _run(capsys, "verify", "cover", "--tol", "1e-300")
    assert code == 1


def test_report_pass_flag_is_all_checks():
    rep = suites.Report("x", [suites.Check("a", 0.0, 1.0), suites.Check("b", 2.0, 1.0)])
    assert not rep.passed
    assert suites.Report("y", [suites.Check("a", 0.0, 1.0)]).passed
    assert not suites.Check("nan", float("nan"), 1.0).passed


def test_push_and_lift_round_trip(capsys, tmp_path):
    S = random_sl(np.random.default_rng(0))
    code, lines = _run(capsys, "push", "--in", _write(tmp_path, "S.json", S))
    assert code == 0 and lines[0]["residual"] < 1e-10
    K = cli.decode_tensor(lines[0]["K"])
    assert residual(K, cover.push(N, S)) == 0
    kpath = tmp_path / "K.json"
    kpath.write_text(json.dumps(lines[0]))
    code, lines = _run(capsys, "lift", "--in", str(kpath))
    assert code == 0
    L = cli.decode_tensor(lines[0]["S"])
    assert min(residual(L, S), residual(L, -S)) < 1e-8


def test_lift_of_non_orthogonal_is_an_input_error(capsys, tmp_path):
    code, lines = _run(capsys, "lift", "--in", _write(tmp_path, "K.json", 2 * np.eye(6)))
    assert code == 2 and lines == []


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert _run(capsys, "push", "--in", str(bad))[0] == 2
    assert _run(capsys, "push", "--in", str(tmp_path / "missing.json"))[0] == 2
    assert _run(capsys, "push")[0] == 2
    assert _run(capsys, "frobnicate")[0] == 2
    assert _run(capsys, "tables", "--set", "nope")[0] == 2
    assert _run(capsys, "flag", "--sig", "4,2")[0] == 2


def test_nullpair_and_canon(capsys, tmp_path):
    rng = np.random.default_rng(1)
    X = random_complex(rng, 4)
    Y = random_complex(rng, 4)
    Y -= (X @ Y) / (X @ X.conj()) * X.conj()
    code, lines = _run(capsys, "nullpair", "--in", _write(tmp_path, "p.json", {"p": np.outer(X, Y)}))
    assert code == 0 and lines[0]["residual"] < 1e-10
    R = np.diag([2j, 1j, -1j, -2j])
    code, lines = _run(capsys, "canon", "--in", _write(tmp_path, "R.json", R), "--sig", "6,0")
    assert code == 0
    assert residual(cli.decode_tensor(lines[0]["eigenvalues"]), np.diag(R)) < 1e-14


def test_flag_default_and_from_file(capsys, tmp_path):
    code, lines = _run(capsys, "flag")
    assert code == 0 and lines[0]["real"] and lines[0]["extension_type"] == "second"
    e = np.eye(4)
    path = _write(tmp_path, "basis.json", {"X": e[0], "Y": 2 * e[1], "Z": e[2], "T": 0.5 * e[3]})
    code, lines = _run(capsys, "flag", "--in", path)
    assert code == 0
    assert lines[0]["extension"] == pytest.approx(0.5 * -np.sqrt(2))


@pytest.mark.parametrize("action", ["point2gen", "gen2point", "family"])
def test_quadric_actions(capsys, action):
    code, lines = _run(capsys, "quadric", action, "--seed", "4")
    assert code == 0
    if action == "family":
        assert lines[0]["rho"] == 1
    else:
        assert lines[0]["residual"] < 1e-9


def test_octonion_table_and_product(capsys, tmp_path):
    code, lines = _run(capsys, "octonion", "--table")
    assert code == 0 and lines[0]["reading"] == [0, 0, 0]
    rng = np.random.default_rng(2)
    x = _write(tmp_path, "x.json", random_complex(rng, 8))
    y = _write(tmp_path, "y.json", random_complex(rng, 8))
    code, lines = _run(capsys, "octonion", "--mul", x, y)
    assert code == 0 and lines[0]["residual"] < 1e-9


def test_curvature_command(capsys):
    code, lines = _run(capsys, "curvature", "--seed", "3", "--terms", "2")
    assert code == 0 and lines[0]["residual"] < 1e-9


def test_out_flag_writes_file(capsys, tmp_path):
    out = tmp_path / "t.json"
    code = cli.main(["tables", "--set", "norden6", "--out", str(out)])
    assert code == 0 and capsys.readouterr().out == ""
    assert json.loads(out.read_text())["g"]["shape"] == [6, 6]


def test_env_tolerance(capsys, monkeypatch, tmp_path):
    S = random_sl(np.random.default_rng(0))
    path = _write(tmp_path, "S.json", S)
    monkeypatch.setenv("HEXASPINOR_TOL", "1e-300")
    assert _run(capsys, "push", "--in", path)[0] == 1


def test_console_output_is_byte_stable():
    cmd = [sys.executable, "-m", "hexaspinor", "verify", "all", "--seed", "5"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
