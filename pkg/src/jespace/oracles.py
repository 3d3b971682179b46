"""Closed-form membership and uniform-rotation predicates.

Each force-law family in the built-in catalogue has a known closed-form
description of its realizable (J, E) set and of the subset coming from
uniform rotations.  These predicates are the ground truth the numeric
classifier is validated against:

* zero:         {E > 0} u {(0, 0)};           rotations: {(0, 0)}
* constant c:   {E > c} u {(0, c)};           rotations: {(0, c)}
* gravitational (k>0, u=-k/r):
      {E J**2 >= -k**2/2};                    rotations: {E J**2 = -k**2/2}
* inverse_square (k>0, u=-k/r**2):
      {J**2 > 2k, E > 0} u {J**2 = 2k, E >= 0} u {J**2 < 2k};
      rotations: {(+-sqrt(2k), 0)}
* hooke (k>0, u=k r**2/2):
      {E >= sqrt(k)|J|} - {(0,0)};            rotations: the boundary - {(0,0)}
* repulsive_elastic (k>0, u=-k r**2/2): whole plane; rotations: empty
* gravity_plus_inverse_square (k,q>0, u=-k/r-q/r**2):
      {J**2 <= 2q} u {J**2 > 2q, E (J**2-2q) >= -k**2/2};
      rotations: {E < 0, E (J**2-2q) = -k**2/2}
* power (k>0, n>0, u=-k/r**(2n)):
      n > 1: whole plane; rotations: {E (J**2)**(n/(1-n)) = (n-1)(2n)**(n/(1-n)) k**(1/(1-n))}
      n = 1: the inverse_square case
      0 < n < 1: {E (J**2)**(n/(1-n)) >= -(1-n)(2n)**(n/(1-n)) k**(1/(1-n))},
      rotations on the equality curve
* oscillatory (q>0, u=q sin(1/r)):
      {E > -q} u {(0, -q)}; rotations: the parametric curve
      J**2 = -q s cos(1/s), E = q sin(1/s) - (q/(2s)) cos(1/s) over the
      radii where cos(1/s) <= 0.

Region membership uses exact closed-form arithmetic (no tolerance).  The
uniform-rotation predicates are curve-proximity tests with a relative
tolerance ``ur_tol`` (the curves are measure-zero sets, so exact float
equality would reject legitimately computed points); the oscillatory
rotation test is an approximate oracle: a dense parametric sweep of the
curve with local refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .forcelaw import ForceLaw, ParameterError, builtin

__all__ = [
    "OracleVerdict",
    "ORACLE_CASES",
    "CASE_ALIASES",
    "canonical_case",
    "law_for_case",
    "oracle",
]

UR_PROXIMITY_TOL = 1e-6

ORACLE_CASES = (
    "zero",
    "constant",
    "gravitational",
    "inverse_square",
    "hooke",
    "repulsive_elastic",
    "gravity_plus_inverse_square",
    "power",
    "oscillatory",
)

# Section-style shorthand accepted by the CLI check command.
CASE_ALIASES = {
    "4.1": "zero",
    "4.2": "gravitational",
    "4.3": "inverse_square",
    "4.4": "hooke",
    "4.5": "repulsive_elastic",
    "4.6": "gravity_plus_inverse_square",
    "4.7": "power",
    "4.8": "oscillatory",
}


@dataclass(frozen=True)
class OracleVerdict:
    in_space: bool
    in_ur: bool
    law_case: str


def canonical_case(case: str) -> str:
    case = CASE_ALIASES.get(case, case)
    if case not in ORACLE_CASES:
        raise ParameterError(f"unknown oracle case {case!r}")
    return case


def law_for_case(case: str, **params: float) -> ForceLaw:
    """The built-in force law the oracle case describes."""
    return builtin(canonical_case(case), **params)


def _near(x: float, target: float, tol: float) -> bool:
    return abs(x - target) <= tol * (1.0 + abs(target))


# --- Oscillatory rotation curve (approximate oracle) ------------------------

_OSC_CURVE_CACHE: dict[tuple[float, float, int], tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


def _osc_curve(q: float, s_min: float = 1e-3, total: int = 100_000):
    """Dense parametric samples of the oscillatory rotation curve.

    Admissible radii are the closed intervals where cos(1/s) <= 0, i.e.
    s in [2/((4k+3)pi), 2/((4k+1)pi)] for k = 0, 1, ...; intervals above
    s_min are swept with roughly equal sample counts."""
    key = (q, s_min, total)
    if key in _OSC_CURVE_CACHE:
        return _OSC_CURVE_CACHE[key]
    intervals = []
    k = 0
    while True:
        lo = 2.0 / ((4 * k + 3) * math.pi)
        hi = 2.0 / ((4 * k + 1) * math.pi)
        if hi < s_min:
            break
        intervals.append((max(lo, s_min), hi))
        k += 1
    per = max(16, total // max(1, len(intervals)))
    ss = np.concatenate([np.linspace(lo, hi, per) for lo, hi in intervals])
    cs = np.cos(1.0 / ss)
    j2 = np.maximum(-q * ss * cs, 0.0)
    ee = q * np.sin(1.0 / ss) - (q / (2.0 * ss)) * cs
    _OSC_CURVE_CACHE[key] = (ss, j2, ee)
    return ss, j2, ee


def _osc_in_ur(q: float, J: float, E: float, tol: float) -> bool:
    ss, j2s, ees = _osc_curve(q)
    J2 = J * J

    def dist(j2, e):
        return np.maximum(
            np.abs(j2 - J2) / (1.0 + J2), np.abs(e - E) / (1.0 + abs(E))
        )

    d = dist(j2s, ees)
    if float(d.min()) <= tol:
        return True

    def point_dist(s):
        c = math.cos(1.0 / s)
        j2 = max(-q * s * c, 0.0)
        e = q * math.sin(1.0 / s) - (q / (2.0 * s)) * c
        return float(dist(j2, e))

    def refine(a, b):
        golden = (math.sqrt(5.0) - 1.0) / 2.0
        x1 = b - golden * (b - a)
        x2 = a + golden * (b - a)
        f1, f2 = point_dist(x1), point_dist(x2)
        for _ in range(120):
            if (b - a) <= 1e-15 * (abs(a) + abs(b)):
                break
            if f1 <= f2:
                b, x2, f2 = x2, x1, f1
                x1 = b - golden * (b - a)
                f1 = point_dist(x1)
            else:
                a, x1, f1 = x1, x2, f2
                x2 = a + golden * (b - a)
                f2 = point_dist(x2)
        return min(f1, f2)

    # Different sweep intervals can pass near the same (J**2, E) point, and
    # the sweep grid is coarser than the acceptance tolerance, so refine
    # every promising local minimum of the sampled distance, not just the
    # best one.
    interior = (d[1:-1] <= d[:-2]) & (d[1:-1] <= d[2:])
    candidates = (np.nonzero(interior)[0] + 1).tolist()
    candidates.sort(key=lambda i: float(d[i]))
    for i in candidates[:50]:
        if float(d[i]) > 0.05:
            break
        a = float(ss[i - 1])
        b = float(ss[i + 1])
        if refine(min(a, b), max(a, b)) <= tol:
            return True
    return False


# --- The oracle --------------------------------------------------------------


def _power_curve_level(k: float, n: float) -> float:
    # (n-1)(2n)**(n/(1-n)) k**(1/(1-n)); negative of it for n in (0, 1).
    return (n - 1.0) * (2.0 * n) ** (n / (1.0 - n)) * k ** (1.0 / (1.0 - n))


def oracle(
    case: str,
    params: Mapping[str, float],
    J: float,
    E: float,
    ur_tol: float = UR_PROXIMITY_TOL,
) -> OracleVerdict:
    """Closed-form verdict for one state.  Region membership is exact;
    rotation-curve membership uses relative proximity ``ur_tol``."""
    case = canonical_case(case)
    law_for_case(case, **params)  # validates parameter constraints
    p = {k: float(v) for k, v in params.items()}
    J = float(J)
    E = float(E)
    J2 = J * J

    if case == "zero":
        in_space = E > 0.0 or (J == 0.0 and E == 0.0)
        in_ur = abs(J) <= ur_tol and abs(E) <= ur_tol
        return OracleVerdict(in_space, in_ur, case)

    if case == "constant":
        c = p["k"]
        in_space = E > c or (J == 0.0 and E == c)
        in_ur = abs(J) <= ur_tol and _near(E, c, ur_tol)
        return OracleVerdict(in_space, in_ur, case)

    if case == "gravitational":
        k = p["k"]
        in_space = E * J2 >= -0.5 * k * k
        in_ur = _near(E * J2, -0.5 * k * k, ur_tol)
        return OracleVerdict(in_space, in_ur, case)

    if case == "inverse_square":
        k = p["k"]
        if J2 > 2.0 * k:
            in_space = E > 0.0
        elif J2 == 2.0 * k:
            in_space = E >= 0.0
        else:
            in_space = True
        in_ur = _near(J2, 2.0 * k, ur_tol) and abs(E) <= ur_tol
        return OracleVerdict(in_space, in_ur, case)

    if case == "hooke":
        k = p["k"]
        on_cone = E >= math.sqrt(k) * abs(J)
        at_origin = J == 0.0 and E == 0.0
        in_space = on_cone and not at_origin
        in_ur = (
            _near(E, math.sqrt(k) * abs(J), ur_tol)
            and not (abs(J) <= ur_tol and abs(E) <= ur_tol)
        )
        return OracleVerdict(in_space, in_ur, case)

    if case == "repulsive_elastic":
        return OracleVerdict(True, False, case)

    if case == "gravity_plus_inverse_square":
        k, q = p["k"], p["q"]
        in_space = J2 <= 2.0 * q or E * (J2 - 2.0 * q) >= -0.5 * k * k
        in_ur = E < 0.0 and _near(E * (J2 - 2.0 * q), -0.5 * k * k, ur_tol)
        return OracleVerdict(in_space, in_ur, case)

    if case == "power":
        k, n = p["k"], p["n"]
        if n == 1.0:
            return oracle("inverse_square", {"k": k}, J, E, ur_tol)
        level = _power_curve_level(k, n)
        if n > 1.0:
            # Exponent n/(1-n) < 0: the curve never reaches J = 0.
            in_space = True
            in_ur = J2 > 0.0 and _near(E * J2 ** (n / (1.0 - n)), level, ur_tol)
        else:
            in_space = E * J2 ** (n / (1.0 - n)) >= level
            in_ur = _near(E * J2 ** (n / (1.0 - n)), level, ur_tol)
        return OracleVerdict(in_space, in_ur, case)

    if case == "oscillatory":
        q = p["q"]
        in_space = E > -q or (J == 0.0 and E == -q)
        in_ur = _osc_in_ur(q, J, E, ur_tol)
        return OracleVerdict(in_space, in_ur, case)

    raise AssertionError(case)
