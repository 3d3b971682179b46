"""Force laws per unit mass.

A :class:`ForceLaw` bundles a radial potential-like function ``u`` (energy
per unit mass, defined on r > 0), its derivative ``u_prime`` (radial force
magnitude per unit mass; the equation of motion reads
``r_ddot - r*phi_dot**2 + u_prime(r) = 0``), the named parameters, and two
asymptotic tags:

* ``asym_zero`` describes ``liminf of r**2 * u(r)`` as ``r -> 0``;
* ``asym_inf`` describes ``liminf of u(r)`` as ``r -> infinity``.

Tags are carried as data rather than computed: they are analytic for the
built-in family and ``unknown`` for parsed laws unless the caller supplies
them.  Limits inferior are not numerically decidable, so honesty beats
guessing.

Built-in family (all with analytic derivatives and exact tags):

=========================== ============================ =================
name                        u(r)                         constraints
=========================== ============================ =================
zero                        0                            -
constant                    k                            k real
gravitational               -k/r                         k > 0
inverse_square              -k/r**2                      k > 0
hooke                       k*r**2/2                     k > 0
repulsive_elastic           -k*r**2/2                    k > 0
gravity_plus_inverse_square -k/r - q/r**2                k > 0, q > 0
power                       -k/r**(2n)                   k > 0, n > 0
oscillatory                 q*sin(1/r)                   q > 0
=========================== ============================ =================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping

import numpy as np

from . import expressions as ex

__all__ = [
    "TagKind",
    "AsymTag",
    "ForceLaw",
    "BUILTIN_NAMES",
    "builtin",
    "parse_law",
    "shift_law",
    "UnknownLawError",
    "ParameterError",
]


class UnknownLawError(ValueError):
    """Requested built-in law name does not exist."""


class ParameterError(ValueError):
    """A law parameter is missing, unexpected, or violates its sign constraint."""


class TagKind(Enum):
    FINITE = "finite-with-value"
    MINUS_INFINITY = "minus-infinity"
    PLUS_INFINITY = "plus-infinity"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class AsymTag:
    """Asymptotic limit-inferior tag: a kind plus a value when finite."""

    kind: TagKind
    value: float | None = None

    @classmethod
    def finite(cls, value: float) -> "AsymTag":
        return cls(TagKind.FINITE, float(value))

    @classmethod
    def minus_infinity(cls) -> "AsymTag":
        return cls(TagKind.MINUS_INFINITY)

    @classmethod
    def plus_infinity(cls) -> "AsymTag":
        return cls(TagKind.PLUS_INFINITY)

    @classmethod
    def unknown(cls) -> "AsymTag":
        return cls(TagKind.UNKNOWN)

    def __str__(self) -> str:
        if self.kind is TagKind.FINITE:
            return f"finite:{self.value:g}"
        return self.kind.value


@dataclass(frozen=True)
class ForceLaw:
    """Immutable force law per unit mass; evaluators are pure and
    numpy-aware (scalar or ndarray radius), safe to share across workers."""

    name: str
    u: Callable = field(repr=False)
    u_prime: Callable = field(repr=False)
    params: Mapping[str, float]
    asym_zero: AsymTag
    asym_inf: AsymTag
    # Per-law search hints for the extremum engine (None = module defaults).
    bracket_hint: tuple[float, float] | None = None
    n_grid_hint: int | None = None

    def describe(self) -> str:
        args = ",".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.name}({args})" if args else self.name


def _require(params: dict, names: tuple[str, ...], positive: tuple[str, ...]) -> None:
    unexpected = set(params) - set(names)
    if unexpected:
        raise ParameterError(f"unexpected parameter(s): {sorted(unexpected)}")
    for n in names:
        if n not in params:
            raise ParameterError(f"missing parameter {n!r}")
    for n in positive:
        if not params[n] > 0:
            raise ParameterError(f"parameter {n!r} must be positive, got {params[n]!r}")


def builtin(name: str, **params: float) -> ForceLaw:
    """Construct a built-in force law with analytic derivative and exact tags."""
    p = {k: float(v) for k, v in params.items()}
    fin = AsymTag.finite

    if name == "zero":
        _require(p, (), ())
        return ForceLaw("zero", lambda r: r * 0.0, lambda r: r * 0.0, p, fin(0.0), fin(0.0))

    if name == "constant":
        _require(p, ("k",), ())
        k = p["k"]
        return ForceLaw(
            "constant", lambda r: r * 0.0 + k, lambda r: r * 0.0, p, fin(0.0), fin(k)
        )

    if name == "gravitational":
        _require(p, ("k",), ("k",))
        k = p["k"]
        return ForceLaw(
            "gravitational", lambda r: -k / r, lambda r: k / (r * r), p, fin(0.0), fin(0.0)
        )

    if name == "inverse_square":
        _require(p, ("k",), ("k",))
        k = p["k"]
        return ForceLaw(
            "inverse_square",
            lambda r: -k / (r * r),
            lambda r: 2.0 * k / (r * r * r),
            p,
            fin(-k),
            fin(0.0),
        )

    if name == "hooke":
        _require(p, ("k",), ("k",))
        k = p["k"]
        return ForceLaw(
            "hooke", lambda r: 0.5 * k * r * r, lambda r: k * r, p, fin(0.0),
            AsymTag.plus_infinity(),
        )

    if name == "repulsive_elastic":
        _require(p, ("k",), ("k",))
        k = p["k"]
        return ForceLaw(
            "repulsive_elastic", lambda r: -0.5 * k * r * r, lambda r: -k * r, p,
            fin(0.0), AsymTag.minus_infinity(),
        )

    if name == "gravity_plus_inverse_square":
        _require(p, ("k", "q"), ("k", "q"))
        k, q = p["k"], p["q"]
        return ForceLaw(
            "gravity_plus_inverse_square",
            lambda r: -k / r - q / (r * r),
            lambda r: k / (r * r) + 2.0 * q / (r * r * r),
            p,
            fin(-q),
            fin(0.0),
        )

    if name == "power":
        _require(p, ("k", "n"), ("k", "n"))
        k, n = p["k"], p["n"]
        if n < 1.0:
            near = fin(0.0)
        elif n == 1.0:
            near = fin(-k)
        else:
            near = AsymTag.minus_infinity()
        return ForceLaw(
            "power",
            lambda r: -k * r ** (-2.0 * n),
            lambda r: (2.0 * n * k) * r ** (-2.0 * n - 1.0),
            p,
            near,
            fin(0.0),
        )

    if name == "oscillatory":
        _require(p, ("q",), ("q",))
        q = p["q"]
        # Dense grid over a narrow bracket so every sign interval of the
        # derivative contains sample points.
        return ForceLaw(
            "oscillatory",
            lambda r: q * np.sin(1.0 / r),
            lambda r: -(q * np.cos(1.0 / r)) / (r * r),
            p,
            fin(0.0),
            fin(0.0),
            bracket_hint=(1e-3, 10.0),
            n_grid_hint=65536,
        )

    raise UnknownLawError(f"unknown built-in law {name!r}")


BUILTIN_NAMES = (
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


def parse_law(
    source: str,
    params: Mapping[str, float] | None = None,
    *,
    name: str | None = None,
    asym_zero: AsymTag | None = None,
    asym_inf: AsymTag | None = None,
) -> ForceLaw:
    """Parse a DSL potential into a ForceLaw.

    ``u`` evaluates the parsed AST and ``u_prime`` its exact symbolic
    derivative.  Asymptotic tags default to unknown; callers who know the
    limits may pass them explicitly.
    """
    bindings = {k: float(v) for k, v in (params or {}).items()}
    ast = ex.parse_expression(source, bindings)
    dast = ex.derivative(ast)
    return ForceLaw(
        name=name or f"expr:{source}",
        u=lambda r: ex.evaluate(ast, r, bindings),
        u_prime=lambda r: ex.evaluate(dast, r, bindings),
        params=bindings,
        asym_zero=asym_zero or AsymTag.unknown(),
        asym_inf=asym_inf or AsymTag.unknown(),
    )


def shift_law(law: ForceLaw, c: float) -> ForceLaw:
    """The law u + c.  Shifting leaves the derivative and the near-zero tag
    unchanged; a finite far-field tag shifts by c."""
    c = float(c)
    if law.asym_inf.kind is TagKind.FINITE:
        far = AsymTag.finite(law.asym_inf.value + c)
    else:
        far = law.asym_inf
    base_u = law.u
    return ForceLaw(
        name=f"{law.name}{c:+g}",
        u=lambda r: base_u(r) + c,
        u_prime=law.u_prime,
        params=dict(law.params),
        asym_zero=law.asym_zero,
        asym_inf=far,
        bracket_hint=law.bracket_hint,
        n_grid_hint=law.n_grid_hint,
    )
