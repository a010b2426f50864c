import csv
import io
import math
import subprocess
import sys

import pytest

from vdcsym.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["gen", "vdc", "4", "exact"], "0/1\n1/2\n1/4\n3/4\n"),
        (["gen", "sym", "4", "exact"], "0/1\n1/1\n1/2\n1/2\n"),
        (["gen", "vdc", "1"], "0/1\n"),
        (["gen", "--kind", "reflected", "--n", "3", "--mode", "float"], "1\n0.5\n0.75\n"),
    ],
)
def test_gen(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out == expected


@pytest.mark.parametrize(
    "argv, value",
    [(["disc", "vdc", "2", "inf"], 0.5), (["disc", "vdc", "2", "2"], math.sqrt(1 / 12)),
     (["disc", "sym", "2", "2"], math.sqrt(1 / 12))],
)
def test_disc(capsys, argv, value):
    code, out, _ = run(capsys, *argv)
    header, row = rows(out)
    assert code == 0 and header == ["kind", "N", "p", "value", "scaled"]
    got = row[3]
    num, _, den = got.partition("/")
    assert float(num) / float(den or 1) == pytest.approx(value, rel=1e-15)


def test_disc_exact_fraction_and_empty_scaled(capsys):
    _, out, _ = run(capsys, "disc", "vdc", "1", "inf")
    assert rows(out)[1] == ["vdc", "1", "inf", "1/1", ""]
    _, out, _ = run(capsys, "disc", "vdc", "6", "inf", "--mode", "float")
    assert rows(out)[1][3] == "0.25"


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["haar", "vdc", "1", "0"], [["-1", "0", "1", "2"], ["0", "0", "1", "4"]]),
        (["haar", "sym", "2", "-1"], [["-1", "0", "0", "1"]]),
        (["haar", "sym", "5", "-1"], [["-1", "0", "1", "20"]]),
    ],
)
def test_haar(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and rows(out) == [["j", "m", "mu_num", "mu_den"]] + expected


def test_haar_budget_is_a_usage_error(capsys):
    code, _, err = run(capsys, "haar", "vdc", "1000", "30")
    assert code == 2 and "budget" in err


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "phi", "512")
    assert code == 0 and out.startswith("phi: ok")
    code, out, _ = run(capsys, "verify", "all", "32", "--j-max", "5")
    assert code == 0 and len(out.strip().splitlines()) >= 6
    code, _, _ = run(capsys, "verify", "lemma-9")
    assert code == 2


def test_verify_reports_failure_with_exit_1(capsys, monkeypatch):
    from vdcsym import cli, verify

    def broken(rep, n_max, j_max, rng):
        rep.check(False, "planted", ("vdc", 1, 0, 0))

    monkeypatch.setitem(verify.SUITES, "phi", broken)
    code, out, _ = run(capsys, "verify", "phi", "8")
    assert code == 1 and "FAILED" in out and "planted" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "halton", "3"],
        ["gen", "vdc", "0"],
        ["disc", "vdc", "2", "0.5"],
        ["disc", "vdc", "two", "2"],
        ["sweep", "vdc", "--p", "2"],
        ["sweep", "vdc", "--n", "2..4", "--windows", "2..3"],
        ["sweep", "vdc", "--n", "2..2000000", "--mode", "exact"],
        ["constants", "vdc", "inf", "0", "3"],
        ["gen", "vdc", "4", "--out", "/nonexistent-dir/x.txt"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_sweep_shape(capsys, tmp_path):
    out = tmp_path / "s.csv"
    assert main(["sweep", "sym", "--p", "2", "--n", "2..1024", "--out", str(out)]) == 0
    data = out.read_bytes()
    assert data.endswith(b"\n") and b"\r" not in data
    table = rows(data.decode())
    assert table[0] == ["kind", "N", "p", "value", "scaled"] and len(table) == 1024
    assert max(float(r[4]) for r in table[1:]) < 1.0
    assert main(["sweep", "vdc", "--p", "2", "--n", "2", "--out", str(out)]) == 0
    assert float(rows(out.read_text())[1][3]) == pytest.approx(math.sqrt(1 / 12), rel=1e-15)


def test_sweep_windows_and_strides(capsys):
    code, out, _ = run(capsys, "sweep", "vdc,sym", "--p", "inf,2", "--windows", "4..5")
    table = rows(out)
    assert code == 0 and len(table) == 1 + 2 * 48 * 2
    code, out, _ = run(capsys, "sweep", "vdc", "--n", "2..20:6", "--mode", "exact", "--p", "2")
    assert [r[1] for r in rows(out)[1:]] == ["2", "8", "14", "20"]


def test_constants(capsys):
    code, out, _ = run(capsys, "constants", "vdc", "inf", "4", "7")
    table = rows(out)
    assert code == 0 and table[0] == ["k", "window_max_scaled", "argmax_N"]
    assert [int(r[0]) for r in table[1:]] == [4, 5, 6, 7]
    assert all(2 ** int(r[0]) <= int(r[2]) < 2 ** (int(r[0]) + 1) for r in table[1:])


@pytest.mark.parametrize(
    "argv",
    [["sweep", "sym", "--p", "1.5,2,inf", "--n", "1..300"], ["constants", "sym", "2", "3", "13", "--samples", "8"],
     ["haar", "reflected", "37", "7"]],
)
def test_outputs_are_byte_identical(tmp_path, argv):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_float_values_round_trip(capsys):
    _, out, _ = run(capsys, "sweep", "sym", "--p", "3", "--n", "5..40")
    from vdcsym.discrepancy import build_profile, lp_norm
    from vdcsym.sequences import sym_prefix

    for r in rows(out)[1:]:
        assert float(r[3]) == lp_norm(build_profile(sym_prefix(int(r[1]))), 3)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "vdcsym", "gen", "vdc", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "0/1\n1/2\n"
