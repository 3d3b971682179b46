import math

import pytest

from jespace.cli import main, parse_law_spec


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


class TestLawSpec:
    def test_builtin(self):
        law = parse_law_spec("builtin:gravitational:k=1")
        assert law.name == "gravitational"

    def test_builtin_no_params(self):
        assert parse_law_spec("builtin:zero").name == "zero"

    def test_expr(self):
        law = parse_law_spec("expr:-k/r:k=1")
        assert law.u(2.0) == -0.5

    def test_expr_with_tags(self):
        law = parse_law_spec("expr:-k/2*r^2:k=1,asymInf=-inf")
        from jespace.forcelaw import TagKind

        assert law.asym_inf.kind is TagKind.MINUS_INFINITY

    def test_rejects_unknown_form(self):
        import argparse

        with pytest.raises(argparse.ArgumentTypeError):
            parse_law_spec("magic:whatever")
        with pytest.raises(argparse.ArgumentTypeError):
            parse_law_spec("builtin:gravitational:k=1:extra=2")


class TestClassifyCommand:
    def test_boundary_exit_2(self, capsys):
        rc, out, _ = run(
            capsys, "classify", "--law", "builtin:gravitational:k=1", "--J", "1", "--E", "-0.5"
        )
        assert rc == 2
        assert "boundary-attained" in out
        assert "ur_witness=" in out and "ur_witness=none" not in out

    def test_equilibrium_exit_2(self, capsys):
        rc, out, _ = run(capsys, "classify", "--law", "builtin:zero", "--J", "0", "--E", "0")
        assert rc == 2

    def test_expr_non_member_exit_1(self, capsys):
        rc, _, _ = run(
            capsys, "classify", "--law", "expr:-k/r:k=1", "--J", "1", "--E", "-0.6"
        )
        assert rc == 1

    def test_member_exit_0(self, capsys):
        rc, _, _ = run(
            capsys, "classify", "--law", "builtin:zero", "--J", "0.5", "--E", "1"
        )
        assert rc == 0

    def test_route_both_agrees(self, capsys):
        rc, out, _ = run(
            capsys,
            "classify", "--law", "builtin:gravitational:k=1",
            "--J", "1", "--E", "-0.2", "--route", "both",
        )
        assert rc == 0
        assert out.count("verdict=") == 2
        assert "route_divergence" not in out

    def test_bad_flag_exit_64(self, capsys):
        assert main(["classify", "--law", "nonsense", "--J", "1", "--E", "0"]) == 64
        capsys.readouterr()

    def test_missing_flag_exit_64(self, capsys):
        assert main(["classify", "--law", "builtin:zero", "--J", "1"]) == 64
        capsys.readouterr()


class TestOtherCommands:
    def test_radii_output(self, capsys):
        rc, out, _ = run(
            capsys, "radii", "--law", "builtin:oscillatory:q=1", "--bracket", "0.01:1"
        )
        assert rc == 0
        pairs = [tuple(map(float, line.split())) for line in out.strip().splitlines()]
        expect = [
            (2 / (7 * math.pi), 2 / (5 * math.pi)),
            (2 / (3 * math.pi), 2 / math.pi),
        ]
        for want in expect:
            assert any(
                abs(lo - want[0]) <= 1e-8 and abs(hi - want[1]) <= 1e-8 for lo, hi in pairs
            )

    def test_full_plane_entire(self, capsys):
        rc, out, _ = run(capsys, "full-plane", "--law", "builtin:power:k=1,n=2")
        assert rc == 0 and out.strip() == "entire-plane"

    def test_full_plane_undecidable(self, capsys):
        rc, out, _ = run(capsys, "full-plane", "--law", "expr:q*sin(1/r):q=1")
        assert rc == 0 and out.strip() == "undecidable"

    def test_scan_writes_files(self, capsys, tmp_path):
        csv = tmp_path / "g.csv"
        pgm = tmp_path / "g.pgm"
        rc, out, _ = run(
            capsys,
            "scan", "--law", "builtin:gravitational:k=1",
            "--J-range", "-2:2:9", "--E-range", "-2:1:7",
            "--out", str(csv), "--pgm", str(pgm), "--threads", "2",
        )
        assert rc == 0
        assert csv.read_text().startswith("J,E,member,boundary,ur,margin\n")
        assert pgm.read_text().startswith("P2\n9 7\n255\n")

    def test_scan_reruns_byte_identical(self, capsys, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        for path in (out1, out2):
            rc, _, _ = run(
                capsys,
                "scan", "--law", "builtin:hooke:k=1",
                "--J-range", "-2:2:9", "--E-range", "-1:3:9", "--out", str(path),
            )
            assert rc == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_ur_curve(self, capsys, tmp_path):
        path = tmp_path / "ur.csv"
        rc, _, _ = run(
            capsys,
            "ur-curve", "--law", "builtin:inverse_square:k=1",
            "--s-range", "0.1:10:32", "--out", str(path),
        )
        assert rc == 0
        lines = path.read_text().splitlines()
        assert lines[0] == "s,J,E,omega"
        assert len(lines) == 33
        for line in lines[1:]:
            s, J, E, omega = map(float, line.split(","))
            assert abs(J**2 - 2.0) <= 1e-10 and abs(E) <= 1e-10

    def test_ur_curve_empty(self, capsys, tmp_path):
        path = tmp_path / "none.csv"
        rc, out, _ = run(
            capsys,
            "ur-curve", "--law", "builtin:repulsive_elastic:k=1",
            "--s-range", "0.1:10:32", "--out", str(path),
        )
        assert rc == 0 and "points=0" in out

    def test_simulate(self, capsys, tmp_path):
        path = tmp_path / "orbit.csv"
        rc, out, _ = run(
            capsys,
            "simulate", "--law", "builtin:gravitational:k=1",
            "--r0", "1", "--J", "1", "--t-end", "1", "--dt", "0.001",
            "--out", str(path),
        )
        assert rc == 0
        assert "outcome=completed" in out
        assert path.read_text().splitlines()[0] == "t,r,r_dot,phi,J_resid,E_resid"

    def test_show_config(self, capsys):
        rc, out, _ = run(capsys, "--show-config")
        assert rc == 0
        assert "bracket=1e-06:1e+06" in out
        assert "n_grid=2048" in out

    def test_no_command_is_usage_error(self, capsys):
        assert main([]) == 64
        capsys.readouterr()


class TestCheckCommand:
    @pytest.mark.parametrize("case,extra", [
        ("4.2", ["--k", "1"]),
        ("4.5", ["--k", "1"]),
        ("4.7", ["--k", "1", "--n", "2"]),
    ])
    def test_agreeing_cases_exit_0(self, capsys, case, extra):
        rc, out, _ = run(capsys, "check", "--law-case", case, *extra)
        assert rc == 0
        assert "off_band_disagreements=0" in out

    def test_oscillatory_reports_honest_disagreements(self, capsys):
        # The literal closed form for the oscillatory law over-covers the
        # numeric characterization away from J = 0, so the check reports
        # disagreements rather than claiming agreement.
        rc, out, _ = run(capsys, "check", "--law-case", "4.8", "--q", "1")
        assert rc == 1
        assert "off_band_disagreements=0" not in out

    def test_error_exit_3(self, capsys):
        rc, _, err = run(capsys, "check", "--law-case", "4.2", "--k", "-1")
        assert rc == 3
