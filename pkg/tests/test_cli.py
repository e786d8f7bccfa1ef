import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from entanglekit import qubit, qutrit
from entanglekit.cli import main

LN2, LN3 = math.log(2), math.log(3)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def amps(v):
    return [repr(float(x)) for x in v]


B0 = amps(qutrit.beta_basis(0).amplitudes.real)
B3 = amps(qutrit.beta_basis(3).amplitudes.real)

EXIT_FIXTURES = [
    (["analyze-qubit", "0.7071", "0", "0", "0.7071"], 0),
    (["analyze-qubit", "1", "0", "0", "0"], 1),
    (["analyze-qubit", "0.9", "0", "0", "0.4359"], 0),
    (["analyze-qubit", "0", "1", "1", "0"], 0),
    (["analyze-qubit", "1", "1", "1", "1"], 1),
    (["analyze-qubit", "1", "0", "0", "0", "0", "0", "0", "0"], 1),
    (["analyze-qubit", "0", "0", "0", "1", "1", "0", "0", "0"], 0),
    (["analyze-qubit", "1", "0", "0"], 2),
    (["analyze-qubit", "0", "0", "0", "0"], 2),
    (["analyze-qubit", "a", "b", "c", "d"], 2),
    (["analyze-qutrit", *B0], 0),
    (["analyze-qutrit", "1", "0", "0", "0", "0", "0", "0", "0", "0"], 1),
    (["analyze-qutrit", *B3], 0),
    (["analyze-qutrit", "1", "2"], 2),
    (["teleport", "--alpha", "0.6", "--a00", "0.6"], 0),
    (["teleport", "--alpha", "0.6", "--a00", "0.8"], 0),
    (["teleport", "--alpha", "0.6", "--a00", "0.7", "--tamper-m0", "2", "--basis", "00"], 1),
    (["teleport", "--alpha", "1.5", "--a00", "0.6"], 2),
    (["verify-algebra"], 0),
    (["verify-algebra", "tau-action"], 0),
]


@pytest.mark.parametrize("argv,code", EXIT_FIXTURES)
def test_exit_codes(argv, code, capsys):
    got, _, err = run(argv, capsys)
    assert got == code
    if code == 2:
        assert "error" in err


def test_analyze_qubit_outputs(capsys):
    _, out, _ = run(["analyze-qubit", "0.7071", "0", "0", "0.7071", "--format", "records"], capsys)
    rec = records(out)[0]
    assert rec["classification"] == "maximally_entangled"
    assert abs(rec["entropy_nats"] - LN2) < 1e-8

    _, out, _ = run(["analyze-qubit", "0.9", "0", "0", "0.4359", "--format", "records"], capsys)
    rec = records(out)[0]
    assert rec["classification"] == "entangled"
    assert abs(rec["abs_det_a"] - 0.3923) < 1e-4

    _, out, _ = run(["analyze-qubit", "1", "0", "0", "0"], capsys)
    assert "unentangled" in out and "-0.0" not in out


def test_renormalisation_warning(capsys, caplog):
    code, _, _ = run(["analyze-qubit", "1", "0", "0", "1"], capsys)
    assert code == 0 and "renormalised" in caplog.text
    caplog.clear()
    run(["analyze-qubit", "0.6", "0", "0", "0.8"], capsys)
    assert "renormalised" not in caplog.text


def test_complex_input_and_file(tmp_path, capsys):
    f = tmp_path / "state.txt"
    f.write_text("0 0.7071067811865476\n0 0\n0 0\n0.7071067811865476 0\n")
    code, out, _ = run(["analyze-qubit", "--input", str(f), "--format", "records"], capsys)
    rec = records(out)[0]
    assert code == 0 and rec["classification"] == "maximally_entangled"
    assert abs(rec["det_a_im"] - 0.5) < 1e-12


def test_random_input_is_seeded(capsys):
    _, a, _ = run(["analyze-qutrit", "--input", "random", "--seed", "7", "--format", "records"], capsys)
    _, b, _ = run(["analyze-qutrit", "--input", "random", "--seed", "7", "--format", "records"], capsys)
    _, c, _ = run(["analyze-qutrit", "--input", "random", "--seed", "8", "--format", "records"], capsys)
    assert a == b and a != c


def test_tolerance_flag(capsys):
    argv = ["analyze-qubit", "1", "0", "0", "0.001"]
    assert run(argv, capsys)[0] == 0
    assert run(argv + ["--tolerance", "0.01"], capsys)[0] == 1


def test_analyze_qutrit_outputs(capsys):
    _, out, _ = run(["analyze-qutrit", *B0, "--format", "records"], capsys)
    rec = records(out)[0]
    assert rec["classification"] == "maximally_entangled"
    assert abs(rec["entropy_nats"] - LN3) < 1e-12

    _, out, _ = run(["analyze-qutrit", "1", "0", "0", "0", "0", "0", "0", "0", "0", "--format", "records"], capsys)
    rec = records(out)[0]
    assert rec["tr_p_re"] == 1 and rec["det_p_re"] == 0 and rec["classification"] == "unentangled"

    _, out, _ = run(["analyze-qutrit", *B3, "--format", "records"], capsys)
    rec = records(out)[0]
    assert rec["classification"] == "entangled" and rec["det_p_re"] == 0 and rec["tr_p_re"] == 0


def test_teleport_outputs(capsys):
    _, out, _ = run(["teleport", "--alpha", "0.6", "--a00", "0.6", "--format", "records"], capsys)
    recs = records(out)
    assert [r["alice_basis"] for r in recs] == ["00", "01", "10", "11"]
    assert all(abs(r["fidelity_paper"] - 1) < 1e-12 for r in recs)

    _, out, _ = run(["teleport", "--alpha", "0.6", "--a00", "0.8", "--format", "records"], capsys)
    assert all(abs(r["fidelity_paper"] - 0.9216) < 1e-12 for r in records(out))

    s = repr(1 / math.sqrt(2))
    _, out, _ = run(["teleport", "--alpha", s, "--a00", s, "--basis", "11", "--format", "records"], capsys)
    rec = records(out)[0]
    assert abs(rec["fidelity_paper"] - 1) < 1e-12
    assert abs(rec["fidelity_conditional"] - 1) < 1e-12


def test_teleport_csv(capsys):
    _, out, _ = run(["teleport", "--alpha", "0.6", "--a00", "0.7", "--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4 and abs(float(rows[0]["recovered_alpha"]) - 0.6) < 1e-9


def test_verify_algebra_outputs(capsys):
    _, out, _ = run(["verify-algebra", "--format", "records"], capsys)
    recs = records(out)
    assert [r["id"] for r in recs] == ["su2-raw", "su2", "clifford", "tau-action", "su3-raw", "su3"]
    assert all(r["pass"] and r["residual"] <= 1e-12 for r in recs)

    _, out, _ = run(["verify-algebra", "su3", "--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["id"] == "su3" and rows[0]["pass"] == "true"

    _, out, _ = run(["verify-algebra", "tau-action"], capsys)
    assert out.startswith("tau-action  PASS")


def test_qubit_sweep(capsys):
    code, out, _ = run(["entropy-sweep-qubit", "--points", "5"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "det_a_squared,entropy_nats" and len(lines) == 6
    first = [float(x) for x in lines[1].split(",")]
    mid = [float(x) for x in lines[3].split(",")]
    last = [float(x) for x in lines[-1].split(",")]
    assert first == [0.0, 0.0]
    assert mid[0] == 0.125 and mid[1] == qubit.qubit_entropy(math.sqrt(0.125))
    assert last[0] == 0.25 and abs(last[1] - LN2) < 1e-12

    _, out, _ = run(["entropy-sweep-qubit"], capsys)
    assert len(out.splitlines()) == 1002
    assert run(["entropy-sweep-qubit", "--points", "1"], capsys)[0] == 2


def test_qutrit_sweep(capsys):
    code, out, _ = run(["entropy-sweep-qutrit", "--points", "4"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 16 + 2
    markers = {r["marker"]: r for r in rows if r["marker"]}
    assert float(markers["unentangled"]["tr_p"]) == 1.0
    assert float(markers["maximal"]["det_p_squared"]) == pytest.approx(1 / 27, abs=1e-15)
    for r in rows:
        if r["applicable"] == "false":
            assert r["entropy_paper_mode"] == "" and r["status"] != "ok"

    code, out, _ = run(["entropy-sweep-qutrit", "--points", "3", "--tr-range", "2", "3",
                        "--det2-range", "0", "0.01"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 9 and not any(r["marker"] for r in rows)
    assert run(["entropy-sweep-qutrit", "--tr-range", "1", "0"], capsys)[0] == 2


@pytest.mark.parametrize("argv", [
    ["entropy-sweep-qubit", "--points", "101"],
    ["entropy-sweep-qutrit", "--points", "20"],
    ["verify-algebra", "--format", "csv"],
    ["teleport", "--alpha", "0.3", "--a00", "0.9", "--format", "records"],
    ["analyze-qutrit", "--input", "random", "--seed", "3", "--format", "csv"],
])
def test_byte_identical_output(argv, tmp_path, capsys):
    a, b = tmp_path / "a.out", tmp_path / "b.out"
    assert main(argv + ["-o", str(a)]) == main(argv + ["-o", str(b)])
    assert a.read_bytes() == b.read_bytes() and a.stat().st_size > 0


def test_format_env_var(monkeypatch, capsys):
    monkeypatch.setenv("ENTANGLEKIT_FORMAT", "records")
    _, out, _ = run(["analyze-qubit", "1", "0", "0", "0"], capsys)
    assert records(out)[0]["classification"] == "unentangled"
    _, out, _ = run(["analyze-qubit", "1", "0", "0", "0", "--format", "human"], capsys)
    assert out.startswith("two-qubit state")

    monkeypatch.setenv("ENTANGLEKIT_FORMAT", "yaml")
    assert run(["analyze-qubit", "1", "0", "0", "0"], capsys)[0] == 2


def test_stdin_and_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "entanglekit", "analyze-qubit", "--input", "-",
                        "--format", "records"], input="0 1 1 0", capture_output=True, text=True)
    assert p.returncode == 0
    rec = json.loads(p.stdout)
    assert rec["classification"] == "maximally_entangled"
    assert np.isclose(rec["entropy_nats"], LN2)
