import csv
import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclic_oscillator import ParameterError
from cyclic_oscillator.cli import RunConfig, format_complex, main, parse_complex, parse_nu


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hermite_table(capsys):
    code, out, _ = run(capsys, "hermite", "--lambda", "3", "--nu", "0,0,0", "--n", "4")
    assert code == 0
    row = json.loads(out)["table"][4]
    assert row["n"] == 4
    assert row["coeffs"] == [[0, 0], [-8, 0], [0, 0], [0, 0], [1, 0]]


def test_hermite_csv(capsys):
    code, out, _ = run(
        capsys, "hermite", "--lambda", "2", "--nu", "0.5,-0.5", "--n", "3", "--format", "csv"
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "z^0", "z^1", "z^2", "z^3"]
    assert rows[4][1:] == ["0.0,0.0", "-4.0,0.0", "0.0,0.0", "1.0,0.0"]


def test_verify_all(capsys):
    code, out, _ = run(
        capsys, "verify", "--suite", "all", "--lambda", "2", "--nu", "0.5,-0.5", "--degree", "20"
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["pass"] is True
    assert doc["max_residual"] <= 1e-9
    assert {"suite", "checks", "max_residual", "pass", "params"} <= set(doc)
    assert all({"name", "value", "tol", "pass"} <= set(c) for c in doc["checks"])


def test_verify_failure_exit_code(capsys):
    # an absurdly tight tolerance makes some residuals fail
    code, out, err = run(
        capsys, "verify", "--suite", "all", "--lambda", "2", "--nu", "0.5,-0.5", "--tol", "1e-18",
    )
    assert code == 1
    assert json.loads(out)["pass"] is False
    assert "verification failed" in err


def test_genexp(capsys):
    code, out, _ = run(capsys, "genexp", "--lambda", "2", "--nu", "0.5,-0.5", "--z", "1")
    doc = json.loads(out)
    assert code == 0
    assert doc["value"][0] == pytest.approx(1.831225, abs=1e-6)
    assert doc["hypergeometric"][0] == pytest.approx(1.831225, abs=1e-6)
    assert doc["delta"] <= 1e-10
    assert {"value", "truncation", "tail_bound"} <= set(doc)


def test_genexp_bad_truncation(capsys):
    code, out, err = run(capsys, "genexp", "--lambda", "2", "--nu", "0,0", "--z", "5", "--T", "3")
    assert code == 1
    assert "tail bound" in json.loads(out)["error"]


def test_kernel(capsys):
    code, out, _ = run(
        capsys, "kernel", "--lambda", "2", "--nu", "0.5,-0.5", "--z", "1", "--w", "1", "--T", "30"
    )
    doc = json.loads(out)
    assert code == 0 and doc["truncation"] == 30
    assert doc["value"][0] == pytest.approx(1.8312249817, abs=1e-9)


def test_moments(capsys):
    code, out, _ = run(capsys, "moments", "--lambda", "3", "--nu", "0,0,0", "--m", "4")
    doc = json.loads(out)
    assert code == 0
    assert doc["moments"]["0"][3] == [2, 0]
    assert doc["moments"]["1"][4] == [8, 0]


def test_fock_json_and_csv(capsys):
    code, out, _ = run(capsys, "fock", "--lambda", "2", "--nu", "0.5,-0.5", "--dim", "8")
    doc = json.loads(out)
    assert code == 0 and doc["pass"]
    assert doc["matrices"]["a_plus"][1][0][0] == pytest.approx(2**0.5)
    code, out, _ = run(
        capsys, "fock", "--lambda", "2", "--nu", "0.5,-0.5", "--dim", "4",
        "--format", "csv", "--what", "a_plus",
    )
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["index", "0", "1", "2", "3"]
    assert rows[2][1] == format_complex(2**0.5)


def test_matrix_csv(capsys):
    code, out, _ = run(
        capsys, "matrix", "--lambda", "3", "--nu", "0,0,0", "--blocks", "2",
        "--what", "X", "--format", "csv",
    )
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["index", "0:0", "0:1", "1:0", "1:1"]
    assert rows[1][2] == "1.0,0.0"


@pytest.mark.parametrize(
    "argv",
    [
        ["hermite", "--lambda", "2", "--nu", "1,1"],
        ["hermite", "--lambda", "3", "--nu", "0,0,0,0"],
        ["hermite", "--lambda", "2", "--nu", "1+"],
        ["hermite", "--lambda", "2"],
        ["fock", "--lambda", "3", "--nu", "0.3,0.1,-0.4"],
        ["matrix", "--lambda", "2", "--nu", "0,0", "--what", "Q"],
        ["moments", "--lambda", "3", "--nu", "0,0,0", "--k", "5"],
    ],
)
def test_invalid_config_exit_code(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert json.loads(out)["pass"] is False
    assert "invalid configuration" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nonsense", "--nu", "0,0"])
    assert exc.value.code == 2


def test_determinism(capsys):
    argv = ["verify", "--suite", "bargmann", "--lambda", "3", "--nu", "random", "--seed", "11"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_report_embeds_resolved_nu(capsys):
    _, out, _ = run(capsys, "hermite", "--lambda", "3", "--nu", "0.1,0.2", "--n", "1")
    nu = json.loads(out)["params"]["nu"]
    assert len(nu) == 3 and nu[0][0] == pytest.approx(-0.3)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cyclic_oscillator", "genexp", "--lambda", "3", "--nu", "0,0,0"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"][0] == pytest.approx(2.718281828459045)


@pytest.mark.parametrize(
    "text, value",
    [("1", 1), ("-0.5", -0.5), ("2i", 2j), ("0.3-0.1i", 0.3 - 0.1j), ("1e-3+2i", 1e-3 + 2j), ("-i", -1j)],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "1 + 2i", "abc", "1+", "i1", "1.2.3"])
def test_parse_complex_rejects(text):
    with pytest.raises(ParameterError):
        parse_complex(text)


finite = st.floats(-1e6, 1e6, allow_nan=False)


@settings(max_examples=50)
@given(st.lists(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False), min_size=1, max_size=5))
def test_run_config_round_trip(nu):
    cfg = RunConfig(lam=len(nu) + 1, nu=nu, tol=1e-8, seed=3)
    assert RunConfig.from_json(cfg.to_json()) == cfg


@settings(max_examples=50)
@given(finite, finite)
def test_complex_literal_round_trip(a, b):
    lit = f"{a!r}{'+' if b >= 0 else '-'}{abs(b)!r}i"
    assert parse_nu(lit) == [complex(a, b)]
