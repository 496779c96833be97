import io
import json

import pytest

from planar_vacuum import cli


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def body(text):
    return [ln for ln in text.splitlines() if not ln.startswith("#")]


def test_qind_csv():
    code, out, _ = call("qind", "--a", "0.1")
    assert code == 0
    assert "# command=qind" in out and "# param.a=0.1" in out and "# backend=" in out
    rows = body(out)
    assert rows[0].split(",")[:3] == ["a", "alpha", "q1"]
    assert float(rows[1].split(",")[2]) == pytest.approx(0.1 * 3.141592653589793 / 4, abs=1e-14)


@pytest.mark.parametrize("argv", [
    ("qind", "--a", "0.3", "--alpha", "0.1"),
    ("supercritical", "--a", "0.8", "--theta", "0.3", "--n-points", "7"),
    ("supercritical", "--a", "1.0", "--form", "window", "--n-points", "5"),
    ("rgflow", "--g0", "1.2", "--e0sq", "0.5", "--n-points", "11"),
    ("massive", "--a", "0.3", "--r-min", "0.01", "--r-max", "5", "--n-points", "6", "--a-cr", "0.6"),
    ("spectrum", "--a", "0.3"),
    ("resonance", "--a", "0.6"),
    ("resonance", "--a", "0.52", "--m", "1", "--theta", "1.65"),
    ("specfun-check",),
])
def test_commands_are_deterministic(argv, monkeypatch):
    c1, o1, _ = call(*argv)
    monkeypatch.setenv("PLANAR_VACUUM_THREADS", "1")
    c2, o2, _ = call(*argv)
    assert c1 == c2 == 0
    assert o1 == o2


def test_json_output():
    code, out, _ = call("spectrum", "--a", "0.3", "--format", "json", "--k-max", "1", "--l-max", "0")
    assert code == 0
    data = json.loads(out)
    assert data["meta"]["command"] == "spectrum"
    assert "columns" in data["meta"]
    assert any(r["energy"] == 0.8 for r in data["rows"])


def test_output_file(tmp_path):
    path = tmp_path / "q.csv"
    code, out, _ = call("qind", "--a", "0.2", "-o", str(path))
    assert code == 0 and out == ""
    assert path.read_text().startswith("# tool=planar-vacuum")


def test_validation_exit_code():
    code, out, err = call("qind", "--a", "0.7")
    assert code == 1 and out == "" and "invalid input" in err
    code, _, _ = call("supercritical", "--a", "0.8", "--r-min", "-1")
    assert code == 1
    code, _, _ = call("nonsense")
    assert code == 1
    code, _, _ = call("qind")
    assert code == 1


def test_convergence_exit_code():
    code, out, err = call("qind", "--a", "0.3", "--accel", "none")
    assert code == 2 and out == ""
    assert "convergence" in err


def test_specfun_check_tolerance_failure():
    code, _, _ = call("specfun-check", "--tol", "1e-30")
    assert code == 2


def test_module_entry_point():
    import subprocess
    import sys

    p = subprocess.run([sys.executable, "-m", "planar_vacuum", "qind", "--a", "0.1"],
                       capture_output=True, text=True)
    assert p.returncode == 0
    assert "q1" in p.stdout
