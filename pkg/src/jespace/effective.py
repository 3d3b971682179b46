"""Effective potential machinery.

For a force law u per unit mass, angular momentum J and energy E per unit
mass, this module evaluates

* the effective force function   ``V_J(r) = J**2/(2 r**2) + u(r)``
* the effective angular momentum ``W_E(r) = 2 r**2 (E - u(r))``

and locates ``inf_{r>0} V_J`` and ``sup_{r>0} W_E`` on a log-spaced search
bracket.  Membership classification needs to know not just the extremal
value but whether it is *attained*: the returned :class:`ExtremumReport`
distinguishes attained interior extrema, limits approached at a bracket
edge, and unbounded behaviour.

Unboundedness is decided analytically from the law's asymptotic tags when
possible (proof-grade); otherwise a sampling heuristic is used and the
report is flagged so callers can tell evidence-grade verdicts apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .expressions import EvalDomainError
from .forcelaw import ForceLaw, TagKind

__all__ = [
    "DEFAULT_BRACKET",
    "DEFAULT_N_GRID",
    "REFINE_REL_TOL",
    "CRITICAL_REL_TOL",
    "DYNAMIC_RANGE",
    "JEState",
    "ExtremumKind",
    "ExtremumReport",
    "eval_V",
    "eval_W",
    "inf_V",
    "sup_W",
]

DEFAULT_BRACKET = (1e-6, 1e6)
DEFAULT_N_GRID = 2048
REFINE_REL_TOL = 1e-10  # golden-section relative radius tolerance
CRITICAL_REL_TOL = 1e-14  # derivative-root polish tolerance
DYNAMIC_RANGE = 1e12  # edge-vs-median ratio that flags heuristic unboundedness

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class JEState:
    """An angular momentum-energy pair (J, E), both per unit mass.

    J may be negative; classification depends on J only through J**2.
    """

    J: float
    E: float


def _as_state(state) -> JEState:
    if isinstance(state, JEState):
        return state
    J, E = state
    return JEState(float(J), float(E))


class ExtremumKind(Enum):
    ATTAINED_INTERIOR = "attained-interior"
    ATTAINED_CRITICAL = "attained-at-critical-point"
    LIMIT_AT_ZERO = "limit-at-zero"
    LIMIT_AT_INFINITY = "limit-at-infinity"
    UNBOUNDED = "unbounded"


_ATTAINED = (ExtremumKind.ATTAINED_INTERIOR, ExtremumKind.ATTAINED_CRITICAL)


@dataclass(frozen=True)
class ExtremumReport:
    """Outcome of a 1-D infimum/supremum search.

    ``value`` is the extremal value (+-inf when ``kind`` is unbounded),
    ``arg_r`` the radius where it is attained (None for limits),
    ``bracket``/``samples`` record the search that produced it, and
    ``heuristic`` marks verdicts that rest on sampling rather than on the
    law's asymptotic tags.
    """

    kind: ExtremumKind
    value: float
    arg_r: float | None
    bracket: tuple[float, float]
    samples: int
    heuristic: bool

    @property
    def attained(self) -> bool:
        return self.kind in _ATTAINED


# --- Pointwise evaluation -------------------------------------------------


def _check_radius(r) -> None:
    if np.any(np.asarray(r) <= 0):
        raise ValueError("radius must be positive")


def eval_V(law: ForceLaw, J: float, r):
    """Effective force function J**2/(2 r**2) + u(r) at radius r (> 0)."""
    _check_radius(r)
    return 0.5 * J * J / (r * r) + law.u(r)


def eval_W(law: ForceLaw, E: float, r):
    """Effective angular momentum 2 r**2 (E - u(r)) at radius r (> 0)."""
    _check_radius(r)
    return 2.0 * (r * r) * (E - law.u(r))


def _sample(fn, rs: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        out = np.asarray(fn(rs), dtype=float)
    if out.shape != rs.shape:
        out = np.full(rs.shape, float(out))
    if not np.all(np.isfinite(out)):
        raise EvalDomainError("force law evaluated to a non-finite value on the grid")
    return out


# --- 1-D search helpers ----------------------------------------------------


def _golden_min(f, a: float, b: float, rel_tol: float) -> tuple[float, float]:
    """Derivative-free minimum of f on [a, b] to relative radius tolerance."""
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while (b - a) > rel_tol * (abs(a) + abs(b)):
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
    x = 0.5 * (a + b)
    return x, f(x)


def _bisect_root(g, a: float, b: float, ga: float, gb: float, rel_tol: float) -> float:
    """Root of g on [a, b] given a sign change, to relative tolerance."""
    if ga == 0.0:
        return a
    if gb == 0.0:
        return b
    for _ in range(200):
        m = 0.5 * (a + b)
        if (b - a) <= rel_tol * (abs(a) + abs(b)) or m == a or m == b:
            return m
        gm = g(m)
        if gm == 0.0:
            return m
        if (ga < 0.0) == (gm < 0.0):
            a, ga = m, gm
        else:
            b, gb = m, gm
    return 0.5 * (a + b)


def _refine_min(f, fprime, a: float, b: float) -> tuple[float, float]:
    """Golden-section refinement plus a derivative polish when the bracket
    holds a sign change of f' (sharpens arg_r to near machine precision)."""
    x, fx = _golden_min(f, a, b, REFINE_REL_TOL)
    ga, gb = fprime(a), fprime(b)
    if ga < 0.0 < gb:
        xc = _bisect_root(fprime, a, b, ga, gb, CRITICAL_REL_TOL)
        fxc = f(xc)
        if fxc <= fx + 1e-12 * (1.0 + abs(fx)):
            return xc, fxc
    return x, fx


@dataclass(frozen=True)
class _Candidate:
    value: float
    kind: ExtremumKind
    arg_r: float | None
    heuristic: bool
    sort_r: float  # 0 for the zero edge, inf for the far edge


def _interior_minima(f, fprime, rs: np.ndarray, vs: np.ndarray) -> list[_Candidate]:
    n = len(rs)
    weak = (vs[1:-1] <= vs[:-2]) & (vs[1:-1] <= vs[2:])
    idx = np.nonzero(weak)[0] + 1
    # Consecutive weak-minimum indices carry equal values (a sampled tie or
    # plateau); treat each run as one candidate bracketed by its shoulders.
    runs: list[tuple[int, int]] = []
    for i in idx:
        i = int(i)
        if runs and i == runs[-1][1] + 1:
            runs[-1] = (runs[-1][0], i)
        else:
            runs.append((i, i))
    if len(runs) > 64:
        runs = sorted(sorted(runs, key=lambda se: (vs[se[0]], rs[se[0]]))[:64])
    out = []
    for start, end in runs:
        right = min(end + 1, n - 1)
        x, fx = _refine_min(f, fprime, float(rs[start - 1]), float(rs[right]))
        strict = vs[start] < vs[start - 1] and vs[end] < vs[right]
        kind = ExtremumKind.ATTAINED_INTERIOR if strict else ExtremumKind.ATTAINED_CRITICAL
        out.append(_Candidate(fx, kind, x, False, x))
    return out


def _resolve_search(law: ForceLaw, bracket, n_grid) -> tuple[float, float, int]:
    lo, hi = bracket if bracket is not None else (law.bracket_hint or DEFAULT_BRACKET)
    n = n_grid if n_grid is not None else (law.n_grid_hint or DEFAULT_N_GRID)
    if not (0.0 < lo < hi):
        raise ValueError(f"bracket must satisfy 0 < lo < hi, got ({lo}, {hi})")
    if n < 64:
        raise ValueError(f"n_grid must be at least 64, got {n}")
    return float(lo), float(hi), int(n)


def _select(cands: list[_Candidate], minimize: bool) -> _Candidate:
    def key(c: _Candidate):
        v = c.value if minimize else -c.value
        return (v, 0 if c.kind in _ATTAINED else 1, c.sort_r)

    return min(cands, key=key)


def _report(c: _Candidate, lo, hi, n) -> ExtremumReport:
    return ExtremumReport(c.kind, c.value, c.arg_r, (lo, hi), n, c.heuristic)


# --- inf V ------------------------------------------------------------------


def inf_V(
    law: ForceLaw,
    J: float,
    bracket: tuple[float, float] | None = None,
    n_grid: int | None = None,
) -> ExtremumReport:
    """Locate inf over r > 0 of the effective force function V_J.

    Near r = 0, ``r**2 V = J**2/2 + r**2 u(r)``, so a finite near-zero tag
    v0 with ``J**2/2 + v0 < 0`` (or a minus-infinity tag on either side)
    proves V is unbounded below.  Otherwise the bracket is sampled on a
    log grid, each local-minimum cell is refined by golden section, and
    edge behaviour is classified as a limit.  Ties between equal minima
    report the smallest radius.
    """
    lo, hi, n = _resolve_search(law, bracket, n_grid)
    J2 = J * J
    near, far = law.asym_zero, law.asym_inf

    if (
        near.kind is TagKind.MINUS_INFINITY
        or far.kind is TagKind.MINUS_INFINITY
        or (near.kind is TagKind.FINITE and 0.5 * J2 + near.value < 0.0)
    ):
        return ExtremumReport(ExtremumKind.UNBOUNDED, -math.inf, None, (lo, hi), n, False)

    def V(r):
        return 0.5 * J2 / (r * r) + law.u(r)

    def Vp(r):
        return -J2 / (r * r * r) + law.u_prime(r)

    rs = np.geomspace(lo, hi, n)
    vs = 0.5 * J2 / (rs * rs) + _sample(law.u, rs)

    if vs.max() == vs.min():
        # Exactly flat: the minimum is attained everywhere; report the
        # smallest radius for determinism.
        c = _Candidate(float(vs[0]), ExtremumKind.ATTAINED_CRITICAL, float(rs[0]), False, float(rs[0]))
        return _report(c, lo, hi, n)

    cands = _interior_minima(V, Vp, rs, vs)

    # Near-zero edge: with a finite tag v0, J**2/2 + v0 > 0 proves V -> +inf
    # (no candidate); == 0 is indeterminate, fall back to samples.
    zero_indeterminate = near.kind is TagKind.FINITE and 0.5 * J2 + near.value == 0.0
    if (zero_indeterminate or near.kind is TagKind.UNKNOWN) and vs[0] <= vs[1] <= vs[2]:
        cands.append(_Candidate(float(vs[0]), ExtremumKind.LIMIT_AT_ZERO, None, True, 0.0))

    # Far edge: a finite tag u_inf is the exact limit of V as r -> inf.
    if far.kind is TagKind.FINITE:
        cands.append(
            _Candidate(float(far.value), ExtremumKind.LIMIT_AT_INFINITY, None, False, math.inf)
        )
    elif far.kind is TagKind.UNKNOWN and vs[-1] <= vs[-2] <= vs[-3]:
        cands.append(_Candidate(float(vs[-1]), ExtremumKind.LIMIT_AT_INFINITY, None, True, math.inf))

    if not cands:
        # V grows toward both edges yet no interior cell is a weak minimum:
        # can only happen for pathological sampling; report the best sample.
        i = int(np.argmin(vs))
        cands.append(_Candidate(float(vs[i]), ExtremumKind.ATTAINED_CRITICAL, float(rs[i]), True, float(rs[i])))

    best = _select(cands, minimize=True)

    if best.kind in (ExtremumKind.LIMIT_AT_ZERO, ExtremumKind.LIMIT_AT_INFINITY) and best.heuristic:
        med = float(np.median(vs))
        if med - best.value > DYNAMIC_RANGE * max(1.0, abs(med)):
            return ExtremumReport(ExtremumKind.UNBOUNDED, -math.inf, None, (lo, hi), n, True)

    return _report(best, lo, hi, n)


# --- sup W ------------------------------------------------------------------


def sup_W(
    law: ForceLaw,
    E: float,
    bracket: tuple[float, float] | None = None,
    n_grid: int | None = None,
) -> ExtremumReport:
    """Locate sup over r > 0 of the effective angular momentum W_E.

    Mirror of :func:`inf_V` for maxima.  Tag analytics: a minus-infinity
    tag on either side makes W unbounded above, as does a finite far tag
    u_inf with E > u_inf (then W ~ 2 r**2 (E - u_inf) along the tail).
    With a finite near-zero tag v0, W -> -2*v0 as r -> 0; that limit is a
    proof-grade candidate.
    """
    lo, hi, n = _resolve_search(law, bracket, n_grid)
    E = float(E)
    near, far = law.asym_zero, law.asym_inf

    if (
        near.kind is TagKind.MINUS_INFINITY
        or far.kind is TagKind.MINUS_INFINITY
        or (far.kind is TagKind.FINITE and E > far.value)
    ):
        return ExtremumReport(ExtremumKind.UNBOUNDED, math.inf, None, (lo, hi), n, False)

    def W(r):
        return 2.0 * (r * r) * (E - law.u(r))

    def negW(r):
        return -W(r)

    def negWp(r):
        return -(4.0 * r * (E - law.u(r)) - 2.0 * (r * r) * law.u_prime(r))

    rs = np.geomspace(lo, hi, n)
    ws = 2.0 * (rs * rs) * (E - _sample(law.u, rs))

    if ws.max() == ws.min():
        c = _Candidate(float(ws[0]), ExtremumKind.ATTAINED_CRITICAL, float(rs[0]), False, float(rs[0]))
        return _report(c, lo, hi, n)

    interior = _interior_minima(negW, negWp, rs, -ws)
    cands = [
        _Candidate(-c.value, c.kind, c.arg_r, c.heuristic, c.sort_r) for c in interior
    ]

    if near.kind is TagKind.FINITE:
        cands.append(
            _Candidate(-2.0 * near.value + 0.0, ExtremumKind.LIMIT_AT_ZERO, None, False, 0.0)
        )
    elif near.kind is TagKind.UNKNOWN and ws[0] >= ws[1] >= ws[2]:
        cands.append(_Candidate(float(ws[0]), ExtremumKind.LIMIT_AT_ZERO, None, True, 0.0))

    far_indeterminate = far.kind is TagKind.FINITE and E == far.value
    if (far_indeterminate or far.kind is TagKind.UNKNOWN) and ws[-1] >= ws[-2] >= ws[-3]:
        cands.append(_Candidate(float(ws[-1]), ExtremumKind.LIMIT_AT_INFINITY, None, True, math.inf))

    if not cands:
        i = int(np.argmax(ws))
        cands.append(_Candidate(float(ws[i]), ExtremumKind.ATTAINED_CRITICAL, float(rs[i]), True, float(rs[i])))

    best = _select(cands, minimize=False)

    if best.kind in (ExtremumKind.LIMIT_AT_ZERO, ExtremumKind.LIMIT_AT_INFINITY) and best.heuristic:
        med = float(np.median(ws))
        if best.value - med > DYNAMIC_RANGE * max(1.0, abs(med)):
            return ExtremumReport(ExtremumKind.UNBOUNDED, math.inf, None, (lo, hi), n, True)

    return _report(best, lo, hi, n)
