import math

import numpy as np
import pytest

from vdwfunc import cli
from vdwfunc.model import AtomParams


@pytest.fixture(autouse=True)
def serial(monkeypatch):
    monkeypatch.setenv("VDW_THREADS", "1")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    lines = text.strip().splitlines()
    header = lines[0]
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


def harmonic_file(path, n=2048, m=1.0, omega=1.0):
    nu = np.concatenate([[0.0], np.geomspace(1e-3, 1e3, n - 1)])
    g = 1.0 / (m * (nu**2 + omega**2))
    path.write_text("".join(f"{float(a)!r} {float(b)!r}\n" for a, b in zip(nu, g)))
    return path


def test_minimal_sweep_framing(capsys):
    code, out, _ = run(capsys, "energy", "--kappa", "0.5", "--x-min", "1", "--x-max", "2", "--points", "2")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == "# x,re_full,im_full,e_weak_closed,e_vdw_asymptote,e_london,g_ratio,status"
    assert len(rows) == 2
    assert all(r[-1] == "ok" for r in rows)
    assert float(rows[0][0]) == 1.0 and float(rows[1][0]) == 2.0


def test_weak_coupling_sweep(capsys):
    code, out, _ = run(capsys, "energy", "--kappa", "0.01", "--x-min", "5", "--x-max", "50", "--points", "12", "--log")
    assert code == 0
    _, rows = parse_csv(out)
    for r in rows:
        re_full, e_weak = float(r[1]), float(r[3])
        assert abs(re_full - e_weak) / abs(re_full) < 1e-4


def test_threshold_sweep_imaginary_part(capsys, monkeypatch):
    monkeypatch.setenv("VDW_THREADS", "4")
    code, out, _ = run(capsys, "energy", "--kappa", "0.5", "--x-min", "0.3", "--x-max", "3", "--points", "256", "--log")
    assert code == 0
    _, rows = parse_csv(out)
    assert len(rows) == 256
    for r in rows:
        x, im = float(r[0]), float(r[2])
        if x > 0.7937:
            assert im == 0.0
        elif x < 0.7936:
            assert im > 0.0


def test_sweep_is_deterministic_across_worker_counts(capsys, monkeypatch):
    argv = ("energy", "--kappa", "0.5", "--x-min", "0.5", "--x-max", "1.5", "--points", "9")
    _, serial_out, _ = run(capsys, *argv)
    monkeypatch.setenv("VDW_THREADS", "3")
    _, parallel_out, _ = run(capsys, *argv)
    assert serial_out == parallel_out


def test_sweep_columns(capsys):
    code, out, _ = run(capsys, "energy", "--kappa", "0.2", "--x-min", "0.4", "--x-max", "4", "--points", "3")
    assert code == 0
    _, rows = parse_csv(out)
    x, g = float(rows[0][0]), float(rows[0][6])
    assert g == pytest.approx(0.2 / x**3, rel=1e-15)
    assert float(rows[0][5]) == pytest.approx(-3 / 16 * g**2, rel=1e-14)


def test_physical_parameters_match_kappa(capsys):
    p = AtomParams(1.1, 0.9, 1.4)
    common = ("energy", "--x-min", "1", "--x-max", "2", "--points", "2")
    _, by_params, _ = run(capsys, *common, "--q", "1.1", "--m", "0.9", "--omega", "1.4")
    _, by_kappa, _ = run(capsys, *common, "--kappa", repr(p.kappa))
    assert by_params == by_kappa


def test_output_file(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code, stdout, _ = run(capsys, "energy", "--kappa", "0.5", "--x-min", "1", "--x-max", "2", "--points", "2", "--out", str(out))
    assert code == 0 and stdout == ""
    assert out.read_text().startswith("# x,")


@pytest.mark.parametrize(
    "argv",
    [
        ("energy", "--x-min", "1", "--x-max", "2"),
        ("energy", "--kappa", "0.5", "--q", "1"),
        ("energy", "--kappa", "0.5", "--points", "1"),
        ("energy", "--kappa", "0.5", "--x-min", "2", "--x-max", "1"),
        ("energy", "--kappa", "-1"),
        ("thresholds", "--kappa", "0"),
        ("thresholds", "--kappa", "-2"),
        ("general", "--correlator", "x.dat", "--q", "1", "--r", "a,b"),
    ],
)
def test_usage_errors_exit_1(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err.startswith("vdw-energy: error:")


@pytest.mark.parametrize("argv", [(), ("bogus",), ("energy", "--kappa", "abc")])
def test_argparse_failures_use_exit_code_1(argv):
    with pytest.raises(SystemExit) as info:
        cli.main(list(argv))
    assert info.value.code == 1


def test_thresholds_report(capsys):
    code, out, _ = run(capsys, "thresholds", "--kappa", "0.5")
    assert code == 0
    assert "x1 = 0.793700525984" in out
    assert "x2 = 0.629960524947" in out


def test_thresholds_unit_coupling(capsys):
    _, out, _ = run(capsys, "thresholds", "--kappa", "1")
    assert "x1 = 1\n" in out
    assert f"x2 = {2 ** (-1 / 3):.12g}" in out


def test_thresholds_physical_units(capsys):
    code, out, _ = run(capsys, "thresholds", "--q", "1", "--m", "1", "--omega", "2")
    assert code == 0
    r1 = (1 / (2 * math.pi * 4)) ** (1 / 3)
    assert f"r1 = {r1:.12g}" in out
    assert "r2 = " in out


def test_general_matches_builtin_harmonic(tmp_path, capsys):
    path = harmonic_file(tmp_path / "h.dat")
    code, out, _ = run(capsys, "general", "--correlator", str(path), "--q", "1", "--r", "0.1,0.5,2,10")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == "# r,e_general,e_asymptote,e_london_general,status"
    from vdwfunc.general import energy_general, harmonic_correlator

    ref = harmonic_correlator(1.0, 1.0)
    for r in rows:
        assert float(r[1]) == pytest.approx(energy_general(ref, 1.0, float(r[0])), rel=1e-6)


def test_general_single_distance(tmp_path, capsys):
    path = harmonic_file(tmp_path / "h.dat", n=256)
    code, out, _ = run(capsys, "general", "--correlator", str(path), "--q", "1", "--r", "1.5")
    assert code == 0
    assert len(parse_csv(out)[1]) == 1


def test_general_empty_file_is_parse_error(tmp_path, capsys):
    path = tmp_path / "empty.dat"
    path.write_text("")
    code, _, err = run(capsys, "general", "--correlator", str(path), "--q", "1", "--r", "1")
    assert code == 1
    assert "no data rows" in err


def test_general_parse_error_names_line(tmp_path, capsys):
    path = tmp_path / "bad.dat"
    path.write_text("# header\n0 1\n1 x\n")
    code, _, err = run(capsys, "general", "--correlator", str(path), "--q", "1", "--r", "1")
    assert code == 1
    assert "line 3" in err


def test_general_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "general", "--correlator", str(tmp_path / "nope.dat"), "--q", "1", "--r", "1")
    assert code == 1
    assert "nope.dat" in err


def test_general_range_shortfall_exits_2(tmp_path, capsys):
    path = tmp_path / "short.dat"
    path.write_text("0 1.0\n0.5 0.8\n1.0 0.5\n")
    code, out, _ = run(capsys, "general", "--correlator", str(path), "--q", "1", "--r", "0.5,20")
    assert code == 2
    _, rows = parse_csv(out)
    assert rows[0][-1].startswith("error:CorrelatorRangeError")
    assert "nu_max >= 15.5" in rows[0][-1]
    assert rows[1][-1] == "ok"


def test_figures(tmp_path, capsys):
    code, _, _ = run(capsys, "figures", "--out", str(tmp_path / "a"))
    assert code == 0
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == ["fig1.csv", "fig1.gp", "fig2.csv", "fig2.gp"]

    fig1 = np.loadtxt(tmp_path / "a" / "fig1.csv", delimiter=",")
    assert fig1[0, 0] == pytest.approx(0.1) and fig1[-1, 0] == pytest.approx(10.0)
    assert np.all(fig1[:, 1] < 0.0)

    fig2 = np.loadtxt(tmp_path / "a" / "fig2.csv", delimiter=",")
    x, im = fig2[:, 0], fig2[:, 2]
    assert np.all(im[x > 0.7937] == 0.0)
    assert np.all(im[x < 0.7937] > 0.0)

    gp = (tmp_path / "a" / "fig2.gp").read_text()
    assert "0.793700525984" in gp and "0.629960524947" in gp

    run(capsys, "figures", "--out", str(tmp_path / "b"))
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_figures_unwritable_path(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _, err = run(capsys, "figures", "--out", str(blocker / "sub"))
    assert code == 1
    assert str(blocker) in err


def test_bad_thread_cap(capsys, monkeypatch):
    monkeypatch.setenv("VDW_THREADS", "many")
    code, _, err = run(capsys, "energy", "--kappa", "0.5", "--x-min", "1", "--x-max", "2", "--points", "2")
    assert code == 1
    assert "VDW_THREADS" in err
