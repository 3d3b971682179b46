"""Membership in the angular momentum-energy state space.

A pair (J, E) is realizable by some motion in the law u exactly when
``E > inf V_J`` or ``E = min V_J`` (with the minimum attained), and
equivalently when ``J**2 < sup W_E`` or ``J**2 = max W_E``.  This module
turns those characterizations into classification verdicts with embedded
extremum evidence, and provides the circular-motion side:

* a uniform rotation at radius s exists iff ``u'(s) >= 0``, with
  ``J**2 = s**3 u'(s)`` and ``E = u(s) + s u'(s)/2``;
* (J, E) corresponds to a uniform rotation iff V_J has a critical point s
  with ``V_J(s) = E`` (equivalently W_E has a critical point s with
  ``W_E(s) = J**2``);
* the state space is the whole plane iff ``liminf_{r->0} r**2 u(r)`` or
  ``liminf_{r->inf} u(r)`` is minus infinity, which is decided from the
  law's asymptotic tags and never guessed from samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .effective import (
    ExtremumKind,
    ExtremumReport,
    _as_state,
    _bisect_root,
    _resolve_search,
    _sample,
    inf_V,
    sup_W,
)
from .forcelaw import ForceLaw, TagKind

__all__ = [
    "Membership",
    "Classification",
    "member_tol",
    "member_tol_W",
    "verdict_from_inf",
    "verdict_from_sup",
    "classify",
    "classify_via_W",
    "UniformRotation",
    "uniform_rotation_at",
    "ur_curve",
    "critical_radii",
    "RotationMatch",
    "is_uniform_rotation",
    "RadiusIntervals",
    "allowed_radii",
    "FullPlaneVerdict",
    "full_plane",
]

WITNESS_REL_TOL = 1e-12  # bisection tolerance for critical-point witnesses


class Membership(Enum):
    MEMBER = "member"
    NON_MEMBER = "non-member"
    BOUNDARY = "boundary-attained"


@dataclass(frozen=True)
class Classification:
    """Membership verdict with the extremum evidence that produced it.

    ``margin`` is ``E - inf V`` on the V route and ``sup W - J**2`` on the
    W route (+inf when the relevant extremum is unbounded)."""

    member: Membership
    route: str  # "V" or "W"
    evidence: ExtremumReport
    margin: float

    @property
    def is_member(self) -> bool:
        return self.member is not Membership.NON_MEMBER


def member_tol(E: float) -> float:
    """Scale-aware boundary tolerance for the V route."""
    return 1e-9 * (1.0 + abs(E))


def member_tol_W(J: float) -> float:
    """Scale-aware boundary tolerance for the W route."""
    return 1e-9 * (1.0 + J * J)


def verdict_from_inf(report: ExtremumReport, E: float) -> tuple[Membership, float]:
    """Membership and margin of (., E) given an inf-V report."""
    if report.kind is ExtremumKind.UNBOUNDED:
        return Membership.MEMBER, math.inf
    margin = E - report.value
    tol = member_tol(E)
    if margin > tol:
        return Membership.MEMBER, margin
    if abs(margin) <= tol and report.attained:
        return Membership.BOUNDARY, margin
    return Membership.NON_MEMBER, margin


def verdict_from_sup(report: ExtremumReport, J: float) -> tuple[Membership, float]:
    """Membership and margin of (J, .) given a sup-W report."""
    if report.kind is ExtremumKind.UNBOUNDED:
        return Membership.MEMBER, math.inf
    margin = report.value - J * J
    tol = member_tol_W(J)
    if margin > tol:
        return Membership.MEMBER, margin
    if abs(margin) <= tol and report.attained:
        return Membership.BOUNDARY, margin
    return Membership.NON_MEMBER, margin


def classify(
    law: ForceLaw,
    state,
    bracket: tuple[float, float] | None = None,
    n_grid: int | None = None,
) -> Classification:
    """Classify (J, E) against the law via the inf-V characterization."""
    s = _as_state(state)
    report = inf_V(law, s.J, bracket=bracket, n_grid=n_grid)
    member, margin = verdict_from_inf(report, s.E)
    return Classification(member, "V", report, margin)


def classify_via_W(
    law: ForceLaw,
    state,
    bracket: tuple[float, float] | None = None,
    n_grid: int | None = None,
) -> Classification:
    """Cross-check classification of (J, E) via the sup-W characterization."""
    s = _as_state(state)
    report = sup_W(law, s.E, bracket=bracket, n_grid=n_grid)
    member, margin = verdict_from_sup(report, s.J)
    return Classification(member, "W", report, margin)


# --- Uniform rotations -----------------------------------------------------


@dataclass(frozen=True)
class UniformRotation:
    """Circular motion at radius s with its induced state.

    J is reported as the nonnegative root of ``s**3 u'(s)``; the mirrored
    state (-J, E) is a uniform rotation as well."""

    s: float
    J: float
    E: float
    angular_rate: float


def _equilibrium_tol(law: ForceLaw, s: float) -> float:
    # Scale the "u'(s) is zero" test by the derivative magnitude nearby, so
    # a float-rounded zero crossing (|u'| a few ulp wide) counts as an
    # equilibrium while a genuinely negative slope never does.
    d = 1e-3
    lo = abs(float(law.u_prime(s * (1.0 - d))))
    hi = abs(float(law.u_prime(s * (1.0 + d))))
    return 1e-12 * max(lo, hi)


def uniform_rotation_at(law: ForceLaw, s: float) -> UniformRotation | None:
    """The uniform rotation at radius s, or None when none exists there.

    Exists iff u'(s) >= 0.  A slope within rounding noise of zero is an
    equilibrium: the state snaps to (0, u(s))."""
    s = float(s)
    if s <= 0:
        raise ValueError("radius must be positive")
    up = float(law.u_prime(s))
    tol = _equilibrium_tol(law, s)
    if up < -tol:
        return None
    if abs(up) <= tol:
        return UniformRotation(s, 0.0, float(law.u(s)), 0.0)
    J = math.sqrt(s * s * s * up)
    E = float(law.u(s)) + 0.5 * s * up
    return UniformRotation(s, J, E, J / (s * s))


def ur_curve(law: ForceLaw, s_range: tuple[float, float], n: int) -> list[UniformRotation]:
    """Uniform rotations at n log-spaced radii; inadmissible radii are
    omitted, so an empty result is valid."""
    lo, hi = s_range
    if not (0.0 < lo < hi):
        raise ValueError("s_range must satisfy 0 < lo < hi")
    if n < 2:
        raise ValueError("need at least 2 radii")
    out = []
    for s in np.geomspace(lo, hi, int(n)):
        ur = uniform_rotation_at(law, float(s))
        if ur is not None:
            out.append(ur)
    return out


def critical_radii(
    law: ForceLaw,
    J: float,
    bracket: tuple[float, float] | None = None,
    n_grid: int | None = None,
) -> list[float]:
    """All critical points of V_J in the bracket (sign changes of V' refined
    by bisection).  When V' vanishes identically the smallest grid radius is
    returned as the representative: every radius is critical."""
    lo, hi, n = _resolve_search(law, bracket, n_grid)
    J2 = J * J

    def Vp(r):
        return -J2 / (r * r * r) + law.u_prime(r)

    rs = np.geomspace(lo, hi, n)
    dps = -J2 / (rs * rs * rs) + _sample(law.u_prime, rs)

    if np.all(dps == 0.0):
        return [float(rs[0])]

    roots: list[float] = []
    zero_idx = np.nonzero(dps == 0.0)[0]
    for i in zero_idx:
        roots.append(float(rs[i]))
    sign_change = np.nonzero(dps[:-1] * dps[1:] < 0.0)[0]
    for i in sign_change:
        roots.append(
            _bisect_root(
                Vp, float(rs[i]), float(rs[i + 1]), float(dps[i]), float(dps[i + 1]),
                WITNESS_REL_TOL,
            )
        )
    roots.sort()
    # Drop duplicates from adjacent exact zeros / refined crossings.
    unique: list[float] = []
    for r in roots:
        if not unique or abs(r - unique[-1]) > 1e-10 * unique[-1]:
            unique.append(r)
    return unique


@dataclass(frozen=True)
class RotationMatch:
    """Whether (J, E) corresponds to a uniform rotation, with witnesses."""

    found: bool
    witness: float | None  # smallest matching radius
    witnesses: tuple[float, ...]  # all matching radii in the bracket


def is_uniform_rotation(
    law: ForceLaw,
    state,
    bracket: tuple[float, float] | None = None,
    n_grid: int | None = None,
) -> RotationMatch:
    """Search for a critical radius s of V_J with V_J(s) = E."""
    s = _as_state(state)
    tol = member_tol(s.E)
    hits = []
    for rc in critical_radii(law, s.J, bracket=bracket, n_grid=n_grid):
        v = 0.5 * s.J * s.J / (rc * rc) + float(law.u(rc))
        if abs(v - s.E) <= tol:
            hits.append(rc)
    if hits:
        return RotationMatch(True, hits[0], tuple(hits))
    return RotationMatch(False, None, ())


# --- Radii admitting a uniform rotation ------------------------------------


@dataclass(frozen=True)
class RadiusIntervals:
    """Ordered disjoint closed intervals of radii where u' >= 0, clipped to
    the search bracket."""

    intervals: tuple[tuple[float, float], ...]
    bracket: tuple[float, float]

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)


def allowed_radii(
    law: ForceLaw,
    bracket: tuple[float, float] | None = None,
    n_grid: int | None = None,
) -> RadiusIntervals:
    """Radii where a uniform rotation exists: the closure of {u' >= 0}.

    Sign changes of u' on the log grid are refined by bisection; interval
    endpoints interior to the bracket are zeros of u'."""
    lo, hi, n = _resolve_search(law, bracket, n_grid)
    rs = np.geomspace(lo, hi, n)
    dps = _sample(law.u_prime, rs)
    nonneg = dps >= 0.0

    def up(r):
        return law.u_prime(r)

    intervals: list[tuple[float, float]] = []
    start: float | None = rs[0] if nonneg[0] else None
    for i in range(n - 1):
        if nonneg[i] == nonneg[i + 1]:
            continue
        if dps[i] == 0.0 or dps[i + 1] == 0.0:
            edge = float(rs[i] if dps[i] == 0.0 else rs[i + 1])
        else:
            edge = _bisect_root(
                up, float(rs[i]), float(rs[i + 1]), float(dps[i]), float(dps[i + 1]),
                WITNESS_REL_TOL,
            )
        if nonneg[i]:
            intervals.append((float(start), edge))
            start = None
        else:
            start = edge
    if start is not None:
        intervals.append((float(start), float(rs[-1])))
    return RadiusIntervals(tuple(intervals), (lo, hi))


# --- Whole-plane criterion ---------------------------------------------------


class FullPlaneVerdict(Enum):
    ENTIRE_PLANE = "entire-plane"
    NOT_ENTIRE_PLANE = "not-entire-plane"
    UNDECIDABLE = "undecidable"


def full_plane(law: ForceLaw) -> FullPlaneVerdict:
    """Is every (J, E) pair realizable?

    Decided purely from the asymptotic tags: yes iff either limit inferior
    is minus infinity, no iff both are finite or plus infinity, undecidable
    when a tag is unknown.  Sampling cannot certify a limit inferior, so
    the verdict never falls back to numerics."""
    near, far = law.asym_zero, law.asym_inf
    if near.kind is TagKind.MINUS_INFINITY or far.kind is TagKind.MINUS_INFINITY:
        return FullPlaneVerdict.ENTIRE_PLANE
    if near.kind is TagKind.UNKNOWN or far.kind is TagKind.UNKNOWN:
        return FullPlaneVerdict.UNDECIDABLE
    return FullPlaneVerdict.NOT_ENTIRE_PLANE
