import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from potfree import basis, cli, spectra


def invoke(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    return list(csv.reader(io.StringIO(text)))


def test_spectrum_matches_library(capsys):
    code, out, _ = invoke(capsys, "spectrum", "--system", "coulomb", "--n", "3")
    assert code == 0
    rows = rows_of(out)
    assert rows[0] == ["n", "E"]
    lib = spectra.bound_states(spectra.coulomb(1.0, 0), 3).bound
    assert rows[1:] == [[str(i), cli.fmt(e)] for i, e in enumerate(lib)]
    assert rows[1] == ["0", "-0.5"]


def test_spectrum_alpha2_units(capsys):
    code, out, _ = invoke(capsys, "spectrum", "--system", "morse", "--alpha", "2", "--units", "alpha2")
    assert code == 0
    lib = spectra.bound_states(spectra.morse_cdh(2.0, 1.0, 2.0)).bound
    assert [r[1] for r in rows_of(out)[1:]] == [cli.fmt(e / 4) for e in lib]


def test_resonances_match_library(capsys):
    code, out, _ = invoke(capsys, "resonances", "--alpha", "1", "--beta", "0.9", "--n-max", "4")
    assert code == 0
    rows = rows_of(out)
    assert rows[0] == ["n", "re_E", "im_E"]
    lib = spectra.resonances(1.0, 0.9, 4)
    energies = [complex(lib.bound[0])] + list(lib.resonances)
    assert rows[1:] == [[str(n), cli.fmt(e.real), cli.fmt(e.imag)] for n, e in enumerate(energies)]


def test_wavefunction_matches_library(capsys):
    code, out, _ = invoke(capsys, "wavefunction", "--system", "resonance", "--m", "0..3", "--points", "41")
    assert code == 0
    rows = rows_of(out)
    assert rows[0] == ["x", "abs_psi_0", "abs_psi_1", "abs_psi_2", "abs_psi_3"]
    x = np.linspace(0.0, 40.0, 41)
    for m in range(4):
        lib = np.abs(basis.resonance_wavefunction(1.0, 0.9, m, x).values)
        assert [r[m + 1] for r in rows[1:]] == [cli.fmt(v) for v in lib]


def test_json_output(capsys):
    code, out, _ = invoke(capsys, "spectrum", "--system", "coulomb", "--n", "2", "--format", "json")
    assert code == 0
    assert json.loads(out) == [{"n": 0, "E": -0.5}, {"n": 1, "E": -0.125}]


def test_output_file(tmp_path, capsys):
    target = tmp_path / "spec.csv"
    code, out, _ = invoke(capsys, "spectrum", "--system", "coulomb", "--output", str(target))
    assert code == 0 and out == ""
    assert target.read_text(encoding="utf-8").startswith("n,E\n0,-0.5\n")
    assert [p.name for p in tmp_path.iterdir()] == ["spec.csv"]


def test_repeated_runs_identical(capsys):
    argvs = [("spectrum", "--system", "log-mp"), ("phase-shift", "--system", "morse", "--points", "7"),
             ("reconstruct", "--potential", "morse", "--N", "10"), ("list-systems",)]
    for argv in argvs:
        first = invoke(capsys, *argv)
        second = invoke(capsys, *argv)
        assert first == second and first[0] == 0


def test_console_script_is_deterministic():
    cmd = [sys.executable, "-m", "potfree.cli", "resonances", "--n-max", "6"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"n,re_E,im_E\n")


def test_reconstruct_command(capsys):
    code, out, _ = invoke(capsys, "reconstruct", "--potential", "morse", "--N", "20")
    rows = rows_of(out)
    assert code == 0 and rows[0] == ["x", "V_local", "V_exact"]
    approx = np.array([float(r[1]) for r in rows[1:]])
    exact = np.array([float(r[2]) for r in rows[1:]])
    assert np.max(np.abs(approx - exact)) <= 0.02 * np.max(np.abs(exact))


def test_verify_passes(capsys):
    code, out, _ = invoke(capsys, "verify", "--suite", "spectra")
    rows = rows_of(out)
    assert code == 0
    assert rows[0] == ["suite", "check", "value", "tolerance", "status"]
    assert all(r[-1] == "pass" for r in rows[1:])


def test_list_systems(capsys):
    code, out, _ = invoke(capsys, "list-systems")
    names = [r[0] for r in rows_of(out)[1:]]
    assert code == 0 and set(names) == set(spectra.catalog())


@pytest.mark.parametrize("argv", [
    ("spectrum", "--system", "nonexistent"),
    ("spectrum", "--system", "coulomb", "--l", "0.5"),
    ("spectrum",),
    ("resonances", "--alpha", "-1"),
    ("wavefunction", "--system", "resonance", "--m", "x"),
    ("wavefunction", "--system", "resonance", "--x-min", "5", "--x-max", "1"),
    ("frobnicate",),
    (),
])
def test_usage_errors(capsys, argv):
    code, _, err = invoke(capsys, *argv)
    assert code == 2
    assert err


def test_numeric_failure_exit_code(capsys):
    # the default Laguerre basis lives on x >= 0
    code, _, err = invoke(capsys, "wavefunction", "--system", "morse", "--x-min", "-1", "--x-max", "1")
    assert code == 1 and "failed" in err
