import numpy as np
import pytest

from jespace.dynamics import (
    Outcome,
    check_trajectory_inequalities,
    kinetic_check,
    simulate,
    write_trace_csv,
)
from jespace.forcelaw import builtin
from jespace.space import uniform_rotation_at

GRAV = builtin("gravitational", k=1.0)
ZERO = builtin("zero")


class TestSimulate:
    def test_circular_orbit_is_fixed_point(self):
        tr = simulate(GRAV, r0=1.0, r_dot0=0.0, J=1.0, t_end=100.0, dt=1e-3)
        assert tr.outcome is Outcome.COMPLETED
        assert float(np.max(np.abs(tr.r - 1.0))) <= 1e-6
        assert tr.max_J_drift <= 1e-6
        assert tr.max_E_drift <= 1e-6

    def test_free_radial_motion(self):
        tr = simulate(ZERO, r0=1.0, r_dot0=1.0, J=0.0, t_end=10.0, dt=1e-3)
        assert float(np.max(np.abs(tr.r - (1.0 + tr.t)))) <= 1e-9
        assert tr.max_J_drift == 0.0  # phi is constant

    def test_elliptic_energy(self):
        tr = simulate(GRAV, r0=2.0, r_dot0=0.0, J=1.0, t_end=50.0, dt=1e-3)
        assert tr.E0 == pytest.approx(1.0 / 8.0 - 1.0 / 2.0, abs=1e-15)
        assert tr.max_E_drift <= 1e-8

    def test_energy_drift_order(self):
        # 4th-order stepper: halving dt shrinks the drift by about 16x
        coarse = simulate(GRAV, r0=2.0, r_dot0=0.0, J=1.0, t_end=50.0, dt=4e-3)
        fine = simulate(GRAV, r0=2.0, r_dot0=0.0, J=1.0, t_end=50.0, dt=2e-3)
        assert coarse.max_E_drift / fine.max_E_drift >= 12.0

    def test_collapse_guard(self):
        tr = simulate(GRAV, r0=1.0, r_dot0=0.0, J=0.0, t_end=5.0, dt=1e-4)
        assert tr.outcome is Outcome.COLLAPSE
        assert tr.t[-1] < 5.0
        assert np.all(tr.r > 0)

    def test_escape_guard(self):
        law = builtin("repulsive_elastic", k=1.0)
        tr = simulate(law, r0=1.0, r_dot0=1.0, J=0.0, t_end=40.0, dt=1e-3)
        assert tr.outcome is Outcome.ESCAPE
        assert tr.t[-1] < 40.0

    def test_preconditions(self):
        with pytest.raises(ValueError):
            simulate(GRAV, r0=-1.0, r_dot0=0.0, J=1.0, t_end=1.0, dt=1e-3)
        with pytest.raises(ValueError):
            simulate(GRAV, r0=1.0, r_dot0=0.0, J=1.0, t_end=1.0, dt=0.0)


# Orbits chosen so every built-in law is exercised; bounded where possible.
TEST_ORBITS = [
    (builtin("zero"), dict(r0=1.0, r_dot0=0.3, J=1.0)),
    (builtin("constant", k=1.0), dict(r0=1.0, r_dot0=0.3, J=1.0)),
    (builtin("gravitational", k=1.0), dict(r0=2.0, r_dot0=0.0, J=1.0)),
    (builtin("inverse_square", k=1.0), dict(r0=3.0, r_dot0=-0.5, J=2.0)),
    (builtin("hooke", k=1.0), dict(r0=1.2, r_dot0=0.0, J=1.0)),
    (builtin("repulsive_elastic", k=1.0), dict(r0=1.0, r_dot0=0.0, J=1.0)),
    (builtin("gravity_plus_inverse_square", k=1.0, q=1.0), dict(r0=2.0, r_dot0=0.0, J=2.0)),
    (builtin("power", k=1.0, n=0.5), dict(r0=2.0, r_dot0=0.0, J=1.0)),
    (builtin("power", k=1.0, n=2.0), dict(r0=1.5, r_dot0=0.5, J=3.0)),
    (builtin("oscillatory", q=1.0), dict(r0=0.3, r_dot0=0.0, J=0.2)),
]


@pytest.mark.parametrize("law,init", TEST_ORBITS, ids=lambda v: getattr(v, "name", ""))
def test_trajectory_inequalities_hold(law, init):
    tr = simulate(law, t_end=15.0, dt=1e-3, **init)
    J = init["J"]
    report = check_trajectory_inequalities(tr, law, J, tr.E0)
    assert report.n_violations == 0


class TestTrajectoryInequalities:
    def test_equality_at_circular_orbit(self):
        tr = simulate(GRAV, r0=1.0, r_dot0=0.0, J=1.0, t_end=5.0, dt=1e-3)
        report = check_trajectory_inequalities(tr, GRAV, 1.0, -0.5)
        assert report.n_violations == 0
        assert abs(report.worst_V_excess) <= 1e-12  # V(r(t)) = E on the circle

    def test_fault_injection_detected(self):
        tr = simulate(GRAV, r0=2.0, r_dot0=0.0, J=1.0, t_end=5.0, dt=1e-3)
        corrupted = tr.r.copy()
        corrupted[137] *= 0.25  # push the sample outside the allowed annulus
        bad = type(tr)(
            tr.t, corrupted, tr.r_dot, tr.phi, tr.J0, tr.E0,
            tr.max_J_drift, tr.max_E_drift, tr.outcome,
        )
        report = check_trajectory_inequalities(bad, GRAV, 1.0, tr.E0)
        assert report.n_violations >= 1
        assert report.worst_index == 137


class TestKineticCheck:
    def test_circular_residuals(self):
        tr = simulate(GRAV, r0=1.0, r_dot0=0.0, J=1.0, t_end=20.0, dt=1e-3)
        rep = kinetic_check(tr, GRAV)
        assert rep.max_J_resid <= 1e-6
        assert rep.max_E_resid <= 1e-6

    def test_radial_trajectory_zero_angular_residual(self):
        tr = simulate(ZERO, r0=1.0, r_dot0=1.0, J=0.0, t_end=5.0, dt=1e-3)
        rep = kinetic_check(tr, ZERO)
        assert rep.max_J_resid == 0.0

    def test_momentum_reconstruction_converges(self):
        # phi_dot reconstruction is second order: quartering dt shrinks the
        # residual by about 16x on a non-circular orbit
        coarse = kinetic_check(simulate(GRAV, r0=2.0, r_dot0=0.0, J=1.0, t_end=10.0, dt=4e-3), GRAV)
        fine = kinetic_check(simulate(GRAV, r0=2.0, r_dot0=0.0, J=1.0, t_end=10.0, dt=1e-3), GRAV)
        assert coarse.max_J_resid / fine.max_J_resid >= 12.0


class TestFixedPointProperty:
    # Radii with u'(s) > 0 whose circular orbit is a minimum of the
    # effective potential: numerically stable for long horizons.
    STABLE = [
        (builtin("gravitational", k=1.0), 1.0),
        (builtin("hooke", k=1.0), 1.0),
        (builtin("gravity_plus_inverse_square", k=1.0, q=1.0), 2.0),
        (builtin("inverse_square", k=1.0), 1.0),
        (builtin("oscillatory", q=1.0), 0.3),
    ]

    @pytest.mark.parametrize("law,s", STABLE, ids=lambda v: getattr(v, "name", str(v)))
    def test_stable_circles_stay_circular(self, law, s):
        ur = uniform_rotation_at(law, s)
        assert ur is not None and ur.J > 0
        tr = simulate(law, r0=s, r_dot0=0.0, J=ur.J, t_end=100.0, dt=1e-3)
        assert tr.outcome is Outcome.COMPLETED
        assert float(np.max(np.abs(tr.r - s))) <= 1e-5 * s

    def test_unstable_circle_diverges(self):
        # For u = -k/r^4 the circular orbit sits at a maximum of the
        # effective potential, so any perturbation (here one part in 1e12)
        # grows exponentially: the fixed-point property cannot hold for
        # unstable circles over long horizons.
        law = builtin("power", k=1.0, n=2.0)
        s = 1.3
        ur = uniform_rotation_at(law, s)
        tr = simulate(law, r0=s * (1.0 + 1e-12), r_dot0=0.0, J=ur.J, t_end=60.0, dt=1e-3)
        deviated = float(np.max(np.abs(tr.r - s))) > 1e-5 * s
        assert deviated or tr.outcome is not Outcome.COMPLETED


class TestTraceCsv:
    def test_format(self, tmp_path):
        tr = simulate(GRAV, r0=1.0, r_dot0=0.0, J=1.0, t_end=0.01, dt=1e-3)
        path = tmp_path / "trace.csv"
        write_trace_csv(tr, GRAV, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "t,r,r_dot,phi,J_resid,E_resid"
        assert len(lines) == len(tr) + 1
        first = lines[1].split(",")
        assert len(first) == 6
        assert float(first[0]) == 0.0

    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for path in (a, b):
            tr = simulate(GRAV, r0=2.0, r_dot0=0.0, J=1.0, t_end=1.0, dt=1e-3)
            write_trace_csv(tr, GRAV, path)
        assert a.read_bytes() == b.read_bytes()
