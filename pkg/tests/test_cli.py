from __future__ import annotations

import csv
import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from conetorsion import cli
from conetorsion.errors import ConvergenceError


@pytest.fixture(scope="module")
def schema():
    text = resources.files("conetorsion").joinpath("schema/report-v1.json").read_text()
    return json.loads(text)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def strip_time(report):
    report = json.loads(report)
    report["diagnostics"].pop("wall_time_ms")
    return report


COMMANDS = [
    ("torsion", "--dim", "1", "--alpha-deg", "90", "--length", "1", "--method", "closed"),
    ("torsion", "--dim", "2", "--alpha", "0.7", "--method", "spectral"),
    ("torsion", "--dim", "3", "--alpha-deg", "90", "--method", "both"),
    ("anomaly", "--dim", "2", "--alpha-deg", "30"),
    ("conjecture", "--p", "3", "--alpha-deg", "45", "--length", "2"),
    ("zeros", "--kind", "tplus", "--nu", "2.5", "--count", "4"),
    ("verify", "--suite", "anomaly"),
]


@pytest.mark.parametrize("argv", COMMANDS)
def test_json_validates(capsys, schema, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    jsonschema.validate(json.loads(out), schema)


@pytest.mark.parametrize("argv", COMMANDS[:3])
def test_output_is_deterministic(capsys, argv):
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert strip_time(a) == strip_time(b)
    assert json.dumps(strip_time(a), sort_keys=True) == json.dumps(strip_time(b), sort_keys=True)


def test_torsion_example(capsys):
    _, out, _ = run(capsys, *COMMANDS[0])
    assert json.loads(out)["result"]["log_torsion"] == pytest.approx(1.0723649, abs=1e-6)


def test_both_methods_agree(capsys):
    _, out, _ = run(capsys, *COMMANDS[2])
    methods = json.loads(out)["result"]["methods"]
    assert abs(methods["difference"]) < 1e-6
    assert methods["difference"] == methods["spectral"] - methods["closed"]


def test_zeros_example(capsys):
    _, out, _ = run(capsys, "zeros", "--kind", "j", "--nu", "0", "--count", "1")
    assert json.loads(out)["result"]["zeros"][0] == pytest.approx(2.4048255577, abs=1e-10)


def test_csv_one_row_per_term(capsys):
    _, out, _ = run(capsys, "torsion", "--dim", "3", "--alpha-deg", "60", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["term", "value"]
    names = [r[0] for r in rows[1:]]
    assert names[0] == "volume_term" and names[-1] == "log_torsion"
    assert "singular_term" in names


def test_verify_table_text(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "anomaly", "--format", "text")
    assert code == 0
    header = out.splitlines()[0].split()
    assert header == ["name", "expected", "got", "tolerance", "status"]
    assert "FAIL" not in out


def test_verify_failure_exit_code(capsys, monkeypatch):
    from conetorsion import verification

    monkeypatch.setitem(verification.SUITES, "anomaly",
                        lambda: iter([verification.Check("x", "1", "2", "exact", False)]))
    code, _, err = run(capsys, "verify", "--suite", "anomaly")
    assert code == 1 and "failed" in err


@pytest.mark.parametrize("argv", [
    ("torsion", "--dim", "1", "--alpha-deg", "95"),
    ("torsion", "--dim", "1", "--alpha", "0"),
    ("torsion", "--dim", "1", "--alpha-deg", "45", "--length", "-1"),
    ("zeros", "--kind", "tminus", "--nu", "1", "--count", "2"),
    ("zeros", "--kind", "nope", "--nu", "1", "--count", "2"),
    ("conjecture", "--p", "0", "--alpha", "1"),
])
def test_validation_exit_code(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and "invalid input" in err


@pytest.mark.parametrize("argv", [
    ("torsion", "--dim", "1", "--alpha", "1", "--alpha-deg", "45"),
    ("torsion", "--dim", "4", "--alpha", "1"),
    ("torsion", "--dim", "1"),
    ("torsion", "--dim", "1", "--alpha", "1", "--tolerance", "-1"),
])
def test_argparse_errors_exit_two(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(list(argv))
    assert exc.value.code == 2


def test_nonconvergence_exit_code(capsys, monkeypatch):
    def boom(*a, **k):
        raise ConvergenceError("tail too large")

    monkeypatch.setattr(cli, "torsion_spectral", boom)
    code, out, err = run(capsys, "torsion", "--dim", "1", "--alpha", "1", "--method", "spectral")
    assert code == 3 and "did not converge" in err


def test_disagreement_exit_code(capsys, monkeypatch):
    real = cli.torsion_spectral

    def shifted(geom, **kw):
        import dataclasses
        b = real(geom, **kw)
        return dataclasses.replace(b, log_torsion=b.log_torsion + 1e-3)

    monkeypatch.setattr(cli, "torsion_spectral", shifted)
    code, out, _ = run(capsys, "torsion", "--dim", "1", "--alpha", "1", "--method", "both")
    assert code == 3
    assert json.loads(out)["result"]["methods"]["difference"] == pytest.approx(1e-3)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "conetorsion", "torsion", "--dim", "1",
                           "--alpha-deg", "90", "--format", "text"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "log_torsion" in proc.stdout
