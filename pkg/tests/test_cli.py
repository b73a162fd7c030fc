import numpy as np
import pytest

from regfilter.cli import load_config, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_cfg(tmp_path, text):
    path = tmp_path / "run.cfg"
    path.write_text(text)
    return str(path)


def test_decompose_default(capsys):
    code, out, _ = run_cli(capsys, "decompose")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "K,M,c,eps,sigma"
    assert lines[1].startswith("0,1.0000000000000000e+00,1.1111111111111112e+00,+1")
    assert lines[2].startswith("1,1.0000000000000000e+01,-1.1111111111111112e+00,-1")


def test_decompose_single_mass(capsys, tmp_path):
    cfg = write_cfg(tmp_path, "masses=[2.5]\n")
    code, out, _ = run_cli(capsys, "decompose", "--config", cfg)
    assert code == 0
    assert "0,2.5000000000000000e+00,1.0000000000000000e+00,+1" in out


def test_decompose_degenerate_masses_exit_2(capsys, tmp_path):
    cfg = write_cfg(tmp_path, "masses=[1,1]\n")
    code, _, err = run_cli(capsys, "decompose", "--config", cfg)
    assert code == 2
    assert "separation threshold" in err


def test_unknown_config_key_rejected(capsys, tmp_path):
    cfg = write_cfg(tmp_path, "massess=[1,10]\n")
    code, _, err = run_cli(capsys, "decompose", "--config", cfg)
    assert code == 2
    assert "unknown config key" in err


def test_prop_regularised_zero_row(capsys, tmp_path):
    cfg = write_cfg(tmp_path, "masses=[1,10]\ntau_min=0\ntau_max=1\ntau_steps=2\n")
    code, out, _ = run_cli(capsys, "prop", "--config", cfg)
    assert code == 0
    row0 = out.splitlines()[1].split(",")
    assert float(row0[0]) == 0.0
    assert float(row0[1]) == 0.0 and float(row0[2]) == 0.0


def test_prop_single_mass_values(capsys, tmp_path):
    cfg = write_cfg(tmp_path, "masses=[1]\ntau_min=2\ntau_max=2\ntau_steps=1\n")
    code, out, _ = run_cli(capsys, "prop", "--config", cfg)
    assert code == 0
    _, re, im = (float(x) for x in out.splitlines()[1].split(","))
    assert re == pytest.approx(np.sin(2.0), abs=1e-16)
    assert im == pytest.approx(np.cos(2.0), abs=1e-16)


def test_prop_empty_grid_exit_2(capsys, tmp_path):
    cfg = write_cfg(tmp_path, "tau_steps=0\n")
    code, _, err = run_cli(capsys, "prop", "--config", cfg)
    assert code == 2


def test_prop_with_oracle(capsys, tmp_path):
    cfg = write_cfg(tmp_path, "masses=[1,10]\ntau_min=0\ntau_max=2\ntau_steps=9\n")
    code, out, _ = run_cli(capsys, "prop", "--config", cfg, "--oracle")
    assert code == 0
    assert "mismatch" not in out


def test_prop_byte_identical_reruns(capsys, tmp_path):
    cfg = write_cfg(tmp_path, "masses=[1,2,4]\ntau_min=-1\ntau_max=3\ntau_steps=40\n")
    _, out1, _ = run_cli(capsys, "prop", "--config", cfg)
    _, out2, _ = run_cli(capsys, "prop", "--config", cfg)
    assert out1 == out2


def test_prop_out_file_lf_endings(capsys, tmp_path):
    cfg = write_cfg(tmp_path, "tau_steps=3\ntau_max=1\n")
    dest = tmp_path / "table.csv"
    code = main(["prop", "--config", cfg, "--out", str(dest)])
    assert code == 0
    raw = dest.read_bytes()
    assert b"\r" not in raw
    assert raw.decode().startswith("tau,re,im\n")


def test_respond_rows_and_exit(capsys, tmp_path):
    cfg = write_cfg(tmp_path, "tau_min=-1\ntau_max=2\ntau_steps=7\n")
    code, out, _ = run_cli(capsys, "respond", "--config", cfg)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "tau,re_resp,im_resp,re_kubo,im_kubo,absdiff"
    # retarded: tau <= 0 rows vanish in every value column
    for line in lines[1:4]:
        cells = [float(x) for x in line.split(",")]
        assert cells[0] <= 0.0
        assert cells[1:] == [0.0, 0.0, 0.0, 0.0, 0.0]


def test_respond_tolerance_failure(capsys, tmp_path):
    cfg = write_cfg(tmp_path, "tau_min=0\ntau_max=2\ntau_steps=5\n")
    code, out, _ = run_cli(capsys, "respond", "--config", cfg, "--tol", "1e-300")
    assert code == 1


def test_born_table(capsys):
    code, out, _ = run_cli(capsys, "born")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("order,")
    assert len(lines) == 6  # orders 0..4
    residuals = [float(line.split(",")[-1]) for line in lines[1:]]
    assert residuals == sorted(residuals, reverse=True)


def test_count_builtin_claims(capsys):
    code, out, _ = run_cli(capsys, "count")
    assert code == 0
    assert "tadpole,1,1,0,4" in out
    assert "self-mass,1,1,1,2" in out
    assert "vacuum-polarisation,1,2,0,2" in out
    assert "vertex,1,2,1,1" in out
    assert "satisfied: True" in out


def test_count_custom_diagram(capsys, tmp_path):
    cfg = write_cfg(tmp_path, "diagrams=double:2,2,2\n")
    code, out, _ = run_cli(capsys, "count", "--config", cfg)
    assert code == 0
    # degree at N=0 is 2, minimal N is 2
    assert "double,2,2,2,2,2,0,-2,-4,-6,-8" in out


def test_count_no_fermion_lines_exit_2(capsys, tmp_path):
    cfg = write_cfg(tmp_path, "diagrams=photons:1,0,0\n")
    code, out, _ = run_cli(capsys, "count", "--config", cfg)
    assert code == 2
    assert "error" in out


def test_count_malformed_spec_exit_2(capsys, tmp_path):
    cfg = write_cfg(tmp_path, "diagrams=oops:1,2\n")
    code, _, err = run_cli(capsys, "count", "--config", cfg)
    assert code == 2


def test_verify_only_module(capsys):
    code, out, _ = run_cli(capsys, "verify", "--only", "counting")
    assert code == 0
    lines = out.splitlines()
    assert all(l.startswith("counting.") for l in lines[:-1])
    assert lines[-1].startswith("TOTAL 3 checks")


def test_verify_unattainable_tolerance(capsys):
    code, out, _ = run_cli(capsys, "verify", "--only", "counting", "--tol", "1e-300")
    assert code == 1
    assert "FAIL" in out


def test_verify_unknown_module(capsys):
    code, _, err = run_cli(capsys, "verify", "--only", "nonsense")
    assert code == 2


def test_dirac_verify(capsys):
    code, out, _ = run_cli(capsys, "dirac-verify")
    assert code == 0
    assert all(l.startswith("dirac.") for l in out.splitlines()[:-1])


def test_load_config_defaults_and_comments(tmp_path):
    path = tmp_path / "c.cfg"
    path.write_text("# a comment\n\nomega1=20\nmasses=[1, 3, 9]\n")
    cfg = load_config(str(path))
    assert cfg["omega1"] == 20.0
    assert cfg["masses"] == [1.0, 3.0, 9.0]
    assert cfg["omega0"] == 1.0  # untouched default
