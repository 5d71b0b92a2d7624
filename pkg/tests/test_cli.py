import csv
import io
import math
import subprocess
import sys

import numpy as np
import pytest

from ising_qpd import cli

GAMMA0 = 0.5 * math.acos(0.4)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


class TestSweep:
    def test_qvd_zero_crossing(self, capsys):
        code, out, _ = run(capsys, "sweep", "--restriction", "qvd", "--payoffs", "3,0,5,1",
                           "--temperature", "1", "--distance", "11", "--steps", "200")
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["gamma", "alpha", "beta", "magnetization", "corr_q11"]
        assert len(rows) == 200
        gammas = np.array([float(r[0]) for r in rows])
        nearest = rows[int(np.argmin(np.abs(gammas - GAMMA0)))]
        assert abs(float(nearest[3])) < 0.01

    def test_qvc_magnetization_zero(self, capsys):
        code, out, _ = run(capsys, "sweep", "--restriction", "qvc", "--payoffs", "3,0,5,1",
                           "--temperature", "1", "--distance", "11")
        header, rows = parse_csv(out)
        assert code == 0 and len(rows) == 200
        assert all(float(r[3]) == 0.0 for r in rows)

    def test_default_distances(self, capsys):
        _, out, _ = run(capsys, "sweep", "--restriction", "qvd", "--payoffs", "3,0,5,1",
                        "--steps", "3")
        assert parse_csv(out)[0][-2:] == ["corr_q11", "corr_q12"]

    def test_zero_t_phases(self, capsys):
        code, out, _ = run(capsys, "sweep", "--restriction", "qvd", "--payoffs", "3,0,5,1",
                           "--mode", "zero_t")
        header, rows = parse_csv(out)
        assert code == 0 and header[-1] == "phase"
        for r in rows:
            g = float(r[0])
            expected = "classical" if g < 0.32175 else "random" if g < 0.78540 else "quantum"
            assert r[-1] == expected, g

    def test_seventeen_digits(self, capsys):
        _, out, _ = run(capsys, "sweep", "--restriction", "qvd", "--payoffs", "3,0,5,1",
                        "--steps", "5")
        _, rows = parse_csv(out)
        g = float(rows[1][0])
        assert g == np.linspace(0, math.pi / 2, 5)[1]
        assert rows[-1][0] == format(math.pi / 2, ".17g")

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "out.csv"
        code, out, _ = run(capsys, "sweep", "--restriction", "qvd", "--payoffs", "3,0,5,1",
                           "--steps", "4", "--output", str(path))
        assert code == 0 and out == ""
        assert len(path.read_text().splitlines()) == 5

    def test_analytic_deterministic(self, capsys):
        args = ("sweep", "--restriction", "qvd", "--payoffs", "3,0,5,1", "--steps", "50")
        assert run(capsys, *args)[1] == run(capsys, *args)[1]


class TestMonteCarlo:
    ARGS = ("--restriction", "qvd", "--payoffs", "3,0,5,1", "--steps", "3", "--n-spins", "32",
            "--sweeps", "400", "--burn-in", "50", "--distance", "2", "--seed", "12")

    def test_byte_identical(self, capsys):
        a = run(capsys, "mc", *self.ARGS)
        b = run(capsys, "sweep", "--mode", "mc", *self.ARGS)
        assert a[0] == 0 and a[1] == b[1]
        header, rows = parse_csv(a[1])
        assert header[-2:] == ["magnetization_stderr", "corr_q2_stderr"]
        assert len(rows) == 3
        assert "rng=" in a[2] and "seed=12" in a[2]

    def test_seed_changes_output(self, capsys):
        a = run(capsys, "mc", *self.ARGS)[1]
        b = run(capsys, "mc", *self.ARGS[:-1], "13")[1]
        assert a != b

    def test_distance_must_fit(self, capsys):
        code, _, err = run(capsys, "mc", "--restriction", "qvd", "--payoffs", "3,0,5,1",
                           "--n-spins", "8", "--distance", "8")
        assert code == 2 and "error" in err


class TestCritical:
    def lines(self, capsys, payoffs):
        code, out, _ = run(capsys, "critical", "--payoffs", payoffs)
        assert code == 0
        return dict(line.split("=", 1) for line in out.split())

    def test_standard(self, capsys):
        d = self.lines(capsys, "3,0,5,1")
        assert float(d["gamma0"]) == pytest.approx(0.57964, abs=1e-5)
        assert float(d["gamma1"]) == pytest.approx(0.32175, abs=1e-5)
        assert float(d["gamma2"]) == pytest.approx(0.78540, abs=1e-5)
        assert d["three_phase"] == "true"

    def test_gamma0_zero(self, capsys):
        assert float(self.lines(capsys, "3,0,2,1")["gamma0"]) == 0.0

    def test_two_phase(self, capsys):
        d = self.lines(capsys, "3,0,3,1")
        assert d["three_phase"] == "false"
        assert d["gamma1"] == d["gamma2"] == "absent"

    def test_undefined(self, capsys):
        assert self.lines(capsys, "3,2,2,1")["gamma0"] == "undefined"


class TestTable:
    def table(self, capsys, gamma):
        code, out, _ = run(capsys, "table", "--gamma", gamma, "--payoffs", "3,0,5,1")
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["row", "C", "D", "Q"]
        return {(r[0], c): float(v) for r in rows for c, v in zip("CDQ", r[1:])}

    def test_unentangled(self, capsys):
        t = self.table(capsys, "0")
        for s in "CDQ":
            assert t[(s, "Q")] == t[(s, "C")]
        assert (t[("C", "D")], t[("D", "C")]) == (0, 5)

    def test_maximal(self, capsys):
        t = self.table(capsys, "1.5708")
        assert t[("Q", "D")] == pytest.approx(5, abs=1e-12)
        assert t[("D", "Q")] == pytest.approx(0, abs=1e-12)
        assert t[("Q", "C")] == pytest.approx(1, abs=1e-12)
        assert t[("C", "Q")] == pytest.approx(1, abs=1e-12)

    @pytest.mark.parametrize("gamma", ["0", "0.4", "1.1"])
    def test_diagonal(self, capsys, gamma):
        t = self.table(capsys, gamma)
        assert t[("C", "C")] == pytest.approx(3, abs=1e-12)
        assert t[("D", "D")] == pytest.approx(1, abs=1e-12)
        assert t[("Q", "Q")] == pytest.approx(3, abs=1e-12)


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        ["table", "--gamma", "2", "--payoffs", "3,0,5,1"],
        ["sweep", "--restriction", "qvd", "--payoffs", "3,0,5,1", "--temperature", "-1"],
        ["sweep", "--restriction", "qvc", "--payoffs", "3,0,5,1", "--mode", "zero_t"],
        ["sweep", "--restriction", "qvd", "--payoffs", "3,0,5,1", "--steps", "1"],
    ])
    def test_domain_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2

    @pytest.mark.parametrize("argv", [
        ["critical", "--payoffs", "3,0,5"],
        ["sweep", "--restriction", "xyz", "--payoffs", "3,0,5,1"],
        [],
    ])
    def test_parse_errors(self, capsys, argv):
        with pytest.raises(SystemExit) as exc:
            cli.main(argv)
        assert exc.value.code == 2

    def test_validate_failure_exit(self, capsys, monkeypatch):
        from ising_qpd import validate
        bad = validate.SuiteResult("broken")
        bad.check(False, "forced")
        monkeypatch.setattr(validate, "run_suites", lambda scale: [bad])
        code, out, _ = run(capsys, "validate")
        assert code == 1
        assert "status=FAIL" in out and out.strip().endswith("overall=FAIL")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ising_qpd", "critical", "--payoffs", "3,0,5,1"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.startswith("gamma0=0.5796")
