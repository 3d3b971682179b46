"""Orbit integration and conservation monitors.

The planar equations of motion are integrated in first-order form with the
angular momentum J folded in as a constant of motion:

    r_dot   = v
    v_dot   = J**2 / r**3 - u'(r)
    phi_dot = J / r**2

so angular-momentum conservation is structural; the polar angle is
recovered by quadrature inside the same fixed-step classical 4th-order
stepper.  Along any solution the trajectory inequalities

    V_J(r(t)) <= E        and        W_E(r(t)) >= J**2

must hold; :func:`check_trajectory_inequalities` verifies them sample by sample and
:func:`kinetic_check` reconstructs phi_dot by central differences to
measure drift of both invariants.

The stepper is deliberately fixed-step and non-adaptive so runs are
deterministic and reproducible.  Radii leaving the guard window
(1e-9, 1e9) terminate the run with a typed outcome instead of producing
non-finite arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .forcelaw import ForceLaw

__all__ = [
    "R_MIN_GUARD",
    "R_MAX_GUARD",
    "Outcome",
    "OrbitTrace",
    "simulate",
    "KineticReport",
    "kinetic_check",
    "InequalityReport",
    "check_trajectory_inequalities",
    "write_trace_csv",
]

R_MIN_GUARD = 1e-9
R_MAX_GUARD = 1e9


class Outcome(Enum):
    COMPLETED = "completed"
    COLLAPSE = "collapse-to-center"
    ESCAPE = "escape-beyond-guard"


@dataclass(frozen=True)
class OrbitTrace:
    """Sampled orbit: times, radii, radial velocities, polar angles, the
    initial invariants, and the worst observed drift of each."""

    t: np.ndarray
    r: np.ndarray
    r_dot: np.ndarray
    phi: np.ndarray
    J0: float
    E0: float
    max_J_drift: float
    max_E_drift: float
    outcome: Outcome

    def __len__(self) -> int:
        return len(self.t)


class _GuardHit(Exception):
    def __init__(self, outcome: Outcome):
        self.outcome = outcome


def _energy(law: ForceLaw, r: np.ndarray, v: np.ndarray, J: float) -> np.ndarray:
    return 0.5 * v * v + 0.5 * J * J / (r * r) + np.asarray(law.u(r), dtype=float)


def _phi_dot_central(phi: np.ndarray, dt: float) -> np.ndarray:
    return (phi[2:] - phi[:-2]) / (2.0 * dt)


def _drifts(law: ForceLaw, t, r, v, phi, J: float, E0: float, dt: float) -> tuple[float, float]:
    e = _energy(law, r, v, J)
    max_e = float(np.max(np.abs(e - E0))) if len(e) else 0.0
    if len(phi) >= 3:
        pd = _phi_dot_central(phi, dt)
        max_j = float(np.max(np.abs(r[1:-1] * r[1:-1] * pd - J)))
    else:
        max_j = 0.0
    return max_j, max_e


def simulate(
    law: ForceLaw,
    *,
    r0: float,
    r_dot0: float,
    J: float,
    phi0: float = 0.0,
    t_end: float,
    dt: float,
) -> OrbitTrace:
    """Integrate from (r0, r_dot0, phi0) with angular momentum J.

    The trace is sampled at every step.  Crossing the guard radii ends the
    run early with outcome collapse-to-center or escape-beyond-guard;
    evaluation-domain errors from the law propagate as exceptions.
    """
    if r0 <= 0:
        raise ValueError("r0 must be positive")
    if dt <= 0 or t_end <= 0:
        raise ValueError("dt and t_end must be positive")

    up = law.u_prime
    J2 = J * J

    def accel(r: float) -> float:
        if r <= R_MIN_GUARD:
            raise _GuardHit(Outcome.COLLAPSE)
        if r >= R_MAX_GUARD:
            raise _GuardHit(Outcome.ESCAPE)
        return J2 / (r * r * r) - float(up(r))

    n_steps = int(round(t_end / dt))
    ts = [0.0]
    rs = [float(r0)]
    vs = [float(r_dot0)]
    ps = [float(phi0)]
    outcome = Outcome.COMPLETED

    r, v, phi = float(r0), float(r_dot0), float(phi0)
    half = 0.5 * dt
    sixth = dt / 6.0
    try:
        for i in range(n_steps):
            a1 = accel(r)
            p1 = J / (r * r)

            r2 = r + half * v
            v2 = v + half * a1
            a2 = accel(r2)
            p2 = J / (r2 * r2)

            r3 = r + half * v2
            v3 = v + half * a2
            a3 = accel(r3)
            p3 = J / (r3 * r3)

            r4 = r + dt * v3
            v4 = v + dt * a3
            a4 = accel(r4)
            p4 = J / (r4 * r4)

            r = r + sixth * (v + 2.0 * v2 + 2.0 * v3 + v4)
            v = v + sixth * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
            phi = phi + sixth * (p1 + 2.0 * p2 + 2.0 * p3 + p4)

            if not (math.isfinite(r) and math.isfinite(v) and math.isfinite(phi)):
                raise _GuardHit(Outcome.COLLAPSE)
            if r <= R_MIN_GUARD:
                raise _GuardHit(Outcome.COLLAPSE)
            if r >= R_MAX_GUARD:
                raise _GuardHit(Outcome.ESCAPE)

            ts.append((i + 1) * dt)
            rs.append(r)
            vs.append(v)
            ps.append(phi)
    except _GuardHit as g:
        outcome = g.outcome

    t_arr = np.asarray(ts)
    r_arr = np.asarray(rs)
    v_arr = np.asarray(vs)
    p_arr = np.asarray(ps)
    E0 = float(_energy(law, np.asarray([r0]), np.asarray([r_dot0]), J)[0])
    max_j, max_e = _drifts(law, t_arr, r_arr, v_arr, p_arr, J, E0, dt)
    return OrbitTrace(t_arr, r_arr, v_arr, p_arr, float(J), E0, max_j, max_e, outcome)


@dataclass(frozen=True)
class KineticReport:
    max_J_resid: float  # over interior samples, phi_dot by central differences
    max_E_resid: float  # over all samples


def kinetic_check(trace: OrbitTrace, law: ForceLaw) -> KineticReport:
    """Residuals of the two conserved quantities along the trace."""
    if len(trace) < 2:
        raise ValueError("trace must hold at least 2 samples")
    dt = float(trace.t[1] - trace.t[0])
    max_j, max_e = _drifts(
        law, trace.t, trace.r, trace.r_dot, trace.phi, trace.J0, trace.E0, dt
    )
    return KineticReport(max_j, max_e)


@dataclass(frozen=True)
class InequalityReport:
    n_violations: int
    worst_V_excess: float  # max over samples of V_J(r) - E (positive = violation)
    worst_W_deficit: float  # max over samples of J**2 - W_E(r)
    worst_index: int | None
    tol: float


def check_trajectory_inequalities(trace: OrbitTrace, law: ForceLaw, J: float, E: float) -> InequalityReport:
    """Verify the trajectory inequalities V_J(r(t)) <= E and
    W_E(r(t)) >= J**2 at every sample; violations are data, not errors."""
    if len(trace) == 0:
        raise ValueError("trace is empty")
    r = trace.r
    u = np.asarray(law.u(r), dtype=float)
    V = 0.5 * J * J / (r * r) + u
    W = 2.0 * r * r * (E - u)
    tol = 1e-6 * (1.0 + abs(E))
    v_excess = V - E
    w_deficit = J * J - W
    bad = (v_excess > tol) | (w_deficit > tol)
    n_bad = int(np.count_nonzero(bad))
    worst_idx = None
    if n_bad:
        worst_idx = int(np.argmax(np.maximum(v_excess, w_deficit)))
    return InequalityReport(
        n_bad, float(np.max(v_excess)), float(np.max(w_deficit)), worst_idx, tol
    )


def write_trace_csv(trace: OrbitTrace, law: ForceLaw, path) -> None:
    """Export the trace as CSV: header ``t,r,r_dot,phi,J_resid,E_resid``,
    one row per step, 17 significant digits.

    ``phi_dot`` for the J residual uses central differences on interior
    rows and one-sided second-order differences at the ends."""
    dt = float(trace.t[1] - trace.t[0]) if len(trace) > 1 else 1.0
    r = trace.r
    if len(trace) >= 3:
        phi_dot = np.gradient(trace.phi, dt, edge_order=2)
    elif len(trace) == 2:
        phi_dot = np.gradient(trace.phi, dt)
    else:
        phi_dot = np.zeros_like(trace.phi)
    j_resid = r * r * phi_dot - trace.J0
    e_resid = _energy(law, r, trace.r_dot, trace.J0) - trace.E0
    with open(path, "w", newline="") as fh:
        fh.write("t,r,r_dot,phi,J_resid,E_resid\n")
        for i in range(len(trace)):
            row = (
                trace.t[i], trace.r[i], trace.r_dot[i], trace.phi[i],
                j_resid[i], e_resid[i],
            )
            fh.write(",".join(f"{x:.17g}" for x in row) + "\n")
