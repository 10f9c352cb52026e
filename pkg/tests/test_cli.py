import numpy as np

from qtransistor.cli import main
from qtransistor.experiments import CSV_HEADER


def test_validate_subcommand(capsys):
    assert main(["validate", "--config", "fig2"]) == 0
    out = capsys.readouterr().out
    assert "status = PASS" in out
    assert "ratio_2g_max_gamma = 1.0000000000000000e+02" in out


def test_sweep_to_file_and_overrides(tmp_path):
    out = tmp_path / "sweep.csv"
    rc = main(["sweep", "--config", "fig2", "--range", "0.5:1.5",
               "--points", "3", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 4
    assert float(lines[1].split(",")[0]) == 0.5
    assert float(lines[-1].split(",")[0]) == 1.5


def test_sweep_deterministic_across_runs(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["sweep", "--config", "fig9a", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_stdout(capsys):
    assert main(["sweep", "--config", "fig9a", "--points", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 3


def test_sweep_workers_match(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sweep", "--config", "fig9a", "--out", str(a)]) == 0
    assert main(["sweep", "--config", "fig9a", "--out", str(b), "--workers", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_bad_config_exit_code(capsys):
    assert main(["sweep", "--config", "does-not-exist"]) == 2
    assert "error:" in capsys.readouterr().err


def test_invalid_range_exit_code(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("omega_L = 30\nomega_M = 1\ng = 0.1\nT_L = 5\nT_M = 1\n"
                   "T_R = 0.5\ngamma = 0.002\naxis = T_M\nlo = 2\nhi = 1\npoints = 5\n")
    assert main(["sweep", "--config", str(cfg)]) == 2


def test_all_points_failed_exit_code(tmp_path, capsys):
    # dark-state sweep without rho44_init fails on every grid point
    cfg = tmp_path / "dark.cfg"
    cfg.write_text("omega_L = 30\nomega_M = 1\ng = 0.3\nT_L = 5\nT_M = 1\n"
                   "T_R = 0.5\ngamma = 0.002\nlambda1 = 1\nlambda2 = 1\n"
                   "lambda3 = 1\naxis = T_M\nlo = 0.5\nhi = 1.5\npoints = 3\n")
    assert main(["sweep", "--config", str(cfg)]) == 3


def test_modulate_subcommand(tmp_path, capsys):
    traj = tmp_path / "traj.csv"
    assert main(["modulate", "--config", "fig8", "--trajectory-out", str(traj)]) == 0
    out = capsys.readouterr().out
    values = dict(line.split(" = ") for line in out.strip().splitlines())
    assert float(values["rho44_before"]) == 0.99
    assert abs(float(values["rho44_after"]) - 0.99 * np.cos(0.7 * np.pi) ** 2) < 1e-6
    assert float(values["scale_factor"]) > 50
    rows = traj.read_text().splitlines()
    assert rows[0] == "t,rho44"
    assert len(rows) == 202


def test_populations_subcommand(tmp_path):
    out = tmp_path / "pops.csv"
    assert main(["populations", "--config", "fig6", "--points", "5",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("axis_value,rho_11")
    assert len(lines) == 6
    row = [float(x) for x in lines[1].split(",")]
    assert abs(sum(row[1:9]) - 1.0) < 1e-10


def test_channels_dump_subcommand(capsys):
    assert main(["channels-dump", "--config", "fig2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "reservoir,k,frequency,i,j,amplitude"
    assert len(lines) == 25  # 12 channels x 2 amplitudes + header


def test_validate_warn_path(tmp_path, capsys):
    cfg = tmp_path / "weak.cfg"
    cfg.write_text("omega_L = 30\nomega_M = 1\ng = 0.002\nT_L = 5\nT_M = 1\n"
                   "T_R = 0.5\ngamma = 0.002\n")
    assert main(["validate", "--config", str(cfg)]) == 0
    out = capsys.readouterr().out
    assert "status = WARN" in out
    assert "warning = " in out


def test_modulate_requires_rho44(tmp_path, capsys):
    cfg = tmp_path / "mod.cfg"
    cfg.write_text("omega_L = 30\nomega_M = 1\ng = 0.7\nT_L = 5\nT_M = 3\n"
                   "T_R = 0.5\ngamma = 0.004\nlambda1 = 1\nlambda2 = 1\n"
                   "lambda3 = 1\ndrive_Omega = 0.3\ndrive_duration = 1\n")
    assert main(["modulate", "--config", str(cfg)]) == 2
    assert "rho44_init" in capsys.readouterr().err


def test_populations_rejects_other_axis(tmp_path):
    cfg = tmp_path / "pop.cfg"
    cfg.write_text("omega_L = 30\nomega_M = 1\ng = 0.7\nT_L = 5\nT_M = 1\n"
                   "T_R = 0.5\ngamma = 0.002\naxis = T_L\nlo = 1\nhi = 2\n"
                   "points = 4\n")
    assert main(["populations", "--config", str(cfg)]) == 2
