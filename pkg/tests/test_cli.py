import json

import numpy as np
import pytest

from qnetperc import read_curve
from qnetperc.cli import run
from qnetperc.percolation import PercolationCurve, write_curve


def make_curve_file(path, p_values, theta, n_nodes, kind="square", protocol="gcp", seed=0):
    curve = PercolationCurve(
        kind=kind,
        n_nodes=n_nodes,
        protocol=protocol,
        theta=np.asarray(theta, float),
        p_mean=np.asarray(p_values, float),
        p_stderr=np.zeros(len(p_values)),
        ensembles=1,
        seed=seed,
    )
    write_curve(curve, path)
    return path


def test_sweep_writes_one_csv_per_size(tmp_path, capsys):
    out = tmp_path / "runs"
    code = run(
        [
            "sweep",
            "--lattice", "square",
            "--sizes", "3,4",
            "--protocol", "gcp",
            "--points", "5",
            "--ensembles", "10",
            "--seed", "42",
            "--workers", "1",
            "--out", str(out),
        ]
    )
    assert code == 0
    files = sorted(out.glob("*.csv"))
    assert [f.name for f in files] == ["gcp_square_3.csv", "gcp_square_4.csv"]
    curve = read_curve(files[0])
    assert curve.n_nodes == 9
    assert curve.seed == 42
    assert curve.theta.size == 5
    assert "wrote" in capsys.readouterr().out


def test_sweep_usage_errors(tmp_path):
    base = ["sweep", "--lattice", "square", "--sizes", "3", "--out", str(tmp_path)]
    with pytest.raises(SystemExit) as exc:
        run(base + ["--points", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(base + ["--sizes", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(["sweep", "--lattice", "square", "--out", str(tmp_path)])
    assert exc.value.code == 2


def test_sweep_reproducible_output_bytes(tmp_path):
    args = [
        "sweep", "--lattice", "triangular", "--sizes", "3",
        "--points", "7", "--ensembles", "20", "--seed", "9", "--workers", "1",
    ]
    run(args + ["--out", str(tmp_path / "a")])
    run(args + ["--out", str(tmp_path / "b")])
    a = (tmp_path / "a" / "gcp_triangular_3.csv").read_bytes()
    b = (tmp_path / "b" / "gcp_triangular_3.csv").read_bytes()
    assert a == b


def test_sweep_config_file_with_flag_override(tmp_path):
    config = tmp_path / "run.toml"
    config.write_text(
        'lattice = "square"\nsizes = "3"\nprotocol = "cep"\n'
        "points = 5\nensembles = 10\nseed = 1\n"
        f'out = "{tmp_path / "runs"}"\nworkers = 1\n'
    )
    code = run(["sweep", "--config", str(config), "--seed", "77"])
    assert code == 0
    curve = read_curve(tmp_path / "runs" / "cep_square_3.csv")
    assert curve.seed == 77  # flag wins over config value
    assert curve.protocol == "cep"


def test_sweep_io_error(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code = run(
        [
            "sweep", "--lattice", "square", "--sizes", "3",
            "--points", "3", "--ensembles", "5", "--workers", "1",
            "--out", str(blocker / "sub"),
        ]
    )
    assert code == 4


def test_threshold_command(tmp_path, capsys):
    theta = np.linspace(0.0, 1.0, 41)
    a = make_curve_file(tmp_path / "a.csv", theta, theta, 36)
    b = make_curve_file(tmp_path / "b.csv", 1.0 - theta, theta, 49)
    out = tmp_path / "threshold.json"
    code = run(["threshold", "--in", str(a), str(b), "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["theta_T"] == pytest.approx(0.5, abs=1e-12)
    assert "theta_T" in capsys.readouterr().out


def test_threshold_single_input_is_usage_error(tmp_path):
    theta = np.linspace(0.0, 1.0, 11)
    a = make_curve_file(tmp_path / "a.csv", theta, theta, 36)
    with pytest.raises(SystemExit) as exc:
        run(["threshold", "--in", str(a), "--out", str(tmp_path / "t.json")])
    assert exc.value.code == 2


def test_threshold_incompatible_curves_exit_3(tmp_path):
    theta = np.linspace(0.0, 1.0, 11)
    a = make_curve_file(tmp_path / "a.csv", theta, theta, 36, kind="square")
    b = make_curve_file(tmp_path / "b.csv", 1 - theta, theta, 49, kind="triangular")
    code = run(["threshold", "--in", str(a), str(b), "--out", str(tmp_path / "t.json")])
    assert code == 3


def scaling_curve_file(tmp_path, n_nodes, nu=4 / 3, beta=5 / 36, c_th=0.55):
    theta = np.linspace(0.0, 1.0, 61)
    c = np.sin(theta * np.pi / 2)
    x = n_nodes ** (1 / (2 * nu)) * (c - c_th)
    p = n_nodes ** (-beta / (2 * nu)) / (1 + np.exp(-x))
    return make_curve_file(tmp_path / f"n{n_nodes}.csv", p, theta, n_nodes)


def test_collapse_command_fit_and_fixed(tmp_path, capsys):
    files = [str(scaling_curve_file(tmp_path, n)) for n in (36, 64, 100)]
    out = tmp_path / "fit.json"
    code = run(["collapse", "--in", *files, "--out", str(out), "--c-th", "0.55"])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["nu"] == pytest.approx(4 / 3, abs=0.05)
    assert payload["beta"] == pytest.approx(5 / 36, abs=0.02)
    cloud = tmp_path / "fit_points.csv"
    assert cloud.exists()
    assert len(cloud.read_text().splitlines()) == 1 + 3 * 61
    capsys.readouterr()

    fixed = tmp_path / "fixed.json"
    code = run(
        [
            "collapse", "--in", *files, "--out", str(fixed),
            "--c-th", "0.55", "--nu", "2.5", "--beta", "0.5",
            "--cloud", str(tmp_path / "wrong.csv"),
        ]
    )
    assert code == 0
    wrong = json.loads(fixed.read_text())
    assert wrong["nu"] == 2.5
    assert wrong["cost"] > payload["cost"]
    assert (tmp_path / "wrong.csv").exists()


def test_collapse_needs_three_curves(tmp_path):
    files = [str(scaling_curve_file(tmp_path, n)) for n in (36, 64)]
    with pytest.raises(SystemExit) as exc:
        run(["collapse", "--in", *files, "--out", str(tmp_path / "f.json")])
    assert exc.value.code == 2


def test_paths_dump(tmp_path):
    out = tmp_path / "paths.csv"
    code = run(["paths", "--lattice", "square", "--size", "3", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "u,v,l,n"
    assert len(lines) == 1 + 36


def test_lattice_dump(tmp_path):
    out = tmp_path / "lat.edges"
    code = run(["lattice", "--lattice", "hexagonal", "--size", "4", "--out", str(out)])
    assert code == 0
    header = json.loads(out.read_text().splitlines()[0])
    assert header["N"] == 48
