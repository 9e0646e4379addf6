import csv
import io
import json

import numpy as np
import pytest
from scipy.integrate import simpson

from wsdirac import cli

BARRIER = ["--w", "1.2", "--a", "5", "--l", "10", "--m0", "0.4"]
WELL = ["--m0", "1", "--w", "2", "--a", "10", "--l", "2"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    lines = text.splitlines()
    assert lines[0].startswith("# wsdirac ")
    rows = list(csv.reader(io.StringIO("\n".join(lines[1:]))))
    return rows[0], rows[1:]


def test_energy_sweep_rows(capsys):
    code, out, _ = run(capsys, "transmission", "--sweep", "e", *BARRIER, "--from", "0.45", "--to", "0.75", "--n", "500")
    assert code == 0
    header, rows = table(out)
    assert header == ["abscissa", "T", "R", "unitarity_residual"]
    assert len(rows) == 500
    x = [float(r[0]) for r in rows]
    assert x == sorted(x)
    assert max(abs(float(r[3])) for r in rows) < 1e-8


def test_height_sweep_default_range(capsys):
    code, out, _ = run(capsys, "transmission", "--sweep", "w", "--e", "0.8", "--m0", "0.4", "--a", "5", "--l", "10", "--n", "60")
    assert code == 0
    _, rows = table(out)
    assert len(rows) == 60
    assert min(float(r[1]) for r in rows) > 0


def test_empty_range(capsys):
    code, out, _ = run(capsys, "transmission", *BARRIER, "--from", "0.5", "--to", "0.5")
    assert code == 0
    header, rows = table(out)
    assert rows == [] and header[0] == "abscissa"


def test_singular_points_noted(capsys):
    code, out, err = run(capsys, "transmission", *BARRIER, "--from", "0.2", "--to", "0.6", "--n", "5")
    assert code == 0
    assert "omitted" in err
    assert len(table(out)[1]) < 5


def test_lf_and_seventeen_digits(capsys):
    _, out, _ = run(capsys, "transmission", *BARRIER, "--from", "0.5", "--to", "0.6", "--n", "3")
    assert "\r" not in out
    T = table(out)[1][1][1]
    assert float(T) == float(f"{float(T):.17g}")


def test_deterministic_output(tmp_path):
    outs = []
    for i in range(2):
        f = tmp_path / f"run{i}.csv"
        assert cli.main(["transmission", *BARRIER, "--n", "40", "--out", str(f)]) == 0
        outs.append(f.read_bytes())
    assert outs[0] == outs[1]


def test_provenance_line(capsys):
    _, out, _ = run(capsys, "spectrum", *WELL)
    first = out.splitlines()[0]
    for key in ("W=2", "a=10", "L=2", "m0=1", "mass=pdm"):
        assert key in first


def test_config_errors(capsys):
    assert run(capsys, "transmission", "--w", "1.2", "--a", "5")[0] == 2
    assert run(capsys, "transmission", *BARRIER, "--n", "-1")[0] == 2
    assert run(capsys, "transmission", "--sweep", "w", *BARRIER)[0] == 2
    assert run(capsys, "spectrum", *WELL, "--n-grid", "100")[0] == 2
    code, _, err = run(capsys, "transmission", "--w", "1.2", "--a", "0", "--l", "10", "--m0", "0.4")
    assert code == 2 and err.count("\n") == 1


def test_numerical_failure(capsys):
    code, _, err = run(capsys, "wavefunction", *WELL, "--e", "0.3")
    assert code == 3 and "numerical failure" in err


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"m0": 1, "w": 2, "a": 10, "l": 2, "mass": "pdm"}))
    _, rows = table(run(capsys, "spectrum", "--config", str(cfg))[1])
    assert len(rows) == 3
    _, rows = table(run(capsys, "spectrum", "--config", str(cfg), "--w", "3")[1])
    assert any(abs(float(r[0]) - 0.97248) < 1e-3 for r in rows)
    cfg.write_text(json.dumps({"width": 3}))
    assert run(capsys, "spectrum", "--config", str(cfg))[0] == 2


def test_spectrum_pdm(capsys):
    _, rows = table(run(capsys, "spectrum", *WELL, "--mass", "pdm")[1])
    want = [-0.633251, -0.00806737, 0.605869]
    assert len(rows) == 3
    assert np.allclose([float(r[0]) for r in rows], want, atol=1e-4, rtol=0)
    assert all(r[2] == "regular" for r in rows)


def test_spectrum_constant(capsys):
    # the threshold E = -m0 is not a zero of the matching condition, so no edge row
    _, rows = table(run(capsys, "spectrum", *WELL, "--mass", "constant")[1])
    want = [-0.759003, -0.273555, 0.271144, 0.788942]
    assert [r[2] for r in rows] == ["regular"] * 4
    assert np.allclose([float(r[0]) for r in rows], want, atol=1e-3, rtol=0)


def test_spectrum_json(capsys):
    doc = json.loads(run(capsys, "spectrum", *WELL, "--json")[1])
    assert len(doc["eigenvalues"]) == 3
    assert doc["grid_meta"]["n_grid"] == 2000


def test_wavefunction_ground_state(capsys):
    code, out, _ = run(capsys, "wavefunction", *WELL, "--index", "0")
    assert code == 0
    header, rows = table(out)
    a = np.array(rows, dtype=float)
    x, rho = a[:, 0], a[:, header.index("density")]
    assert simpson(rho, x=x) == pytest.approx(1.0, abs=1e-6)


def test_wavefunction_region_split(capsys):
    _, out, _ = run(capsys, "wavefunction", "--m0", "1", "--w", "3", "--a", "10", "--l", "2", "--index", "-1", "--n", "40001")
    header, rows = table(out)
    a = np.array(rows, dtype=float)
    x, rho = a[:, 0], a[:, header.index("density")]
    inside = np.abs(x) <= 2
    p_in = simpson(rho[inside], x=x[inside])
    assert p_in == pytest.approx(0.43, abs=0.01)
    assert 1 - p_in == pytest.approx(0.57, abs=0.01)


def test_wavefunction_scattering_current(capsys):
    code, out, _ = run(capsys, "wavefunction", *BARRIER, "--state", "scattering", "--e", "0.6")
    assert code == 0
    header, rows = table(out)
    J = np.array(rows, dtype=float)[:, header.index("current")]
    assert np.max(np.abs(J - J[-1])) < 1e-7 * abs(J[-1])


def test_validate(capsys):
    code, out, _ = run(capsys, "validate")
    assert code == 0 and "all checks passed" in out
    assert run(capsys, "validate", "--tolerance-scale", "1e-12")[0] == 1
    code, out, _ = run(capsys, "validate", "--json")
    doc = json.loads(out)
    assert isinstance(doc, dict) and doc["passed"] is True
