"""Command-line surface.

Subcommands: classify, scan, ur-curve, radii, simulate, full-plane, check.
Exit codes: 0 member / success, 1 non-member (or failed check), 2 boundary,
3 runtime error, 64 flag parse error.  Every command is a pure function of
its flags: repeated invocations produce byte-identical outputs.

Force laws are given as
``builtin:<name>:<param>=<value>,...`` or ``expr:<dsl>:<param>=<value>,...``
with optional ``asym0=``/``asymInf=`` entries in the parameter list to
override the asymptotic tags of a parsed law (values: a float for a finite
limit, ``-inf``, ``+inf``, or ``unknown``).
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from . import effective, space
from .dynamics import simulate, write_trace_csv
from .expressions import EvalDomainError, ParseError
from .forcelaw import AsymTag, ForceLaw, ParameterError, UnknownLawError, builtin, parse_law
from .oracles import CASE_ALIASES, canonical_case, law_for_case
from .scan import compare_with_oracle, scan, write_csv, write_pgm
from .space import (
    Membership,
    allowed_radii,
    classify,
    classify_via_W,
    full_plane,
    is_uniform_rotation,
    member_tol,
    member_tol_W,
    ur_curve,
)

__all__ = ["main", "run"]

EXIT_MEMBER = 0
EXIT_NON_MEMBER = 1
EXIT_BOUNDARY = 2
EXIT_ERROR = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # Let values like -2:2:9 pass as option arguments instead of being
        # mistaken for flags.
        self._negative_number_matcher = re.compile(r"^-\d+(\.\d*)?(:.*)?$|^-\.\d+(:.*)?$")

    def error(self, message):  # argparse default exits 2; the contract is 64
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_tag(text: str) -> AsymTag:
    if text in ("-inf", "minus-inf", "minus-infinity"):
        return AsymTag.minus_infinity()
    if text in ("+inf", "plus-inf", "plus-infinity"):
        return AsymTag.plus_infinity()
    if text == "unknown":
        return AsymTag.unknown()
    return AsymTag.finite(float(text))


def parse_law_spec(spec: str) -> ForceLaw:
    """Parse a --law value into a ForceLaw."""
    parts = spec.split(":")
    if len(parts) < 2 or parts[0] not in ("builtin", "expr"):
        raise argparse.ArgumentTypeError(
            f"law spec must be builtin:<name>[:params] or expr:<dsl>[:params], got {spec!r}"
        )
    kind, body = parts[0], parts[1]
    params: dict[str, float] = {}
    tags: dict[str, AsymTag] = {}
    if len(parts) > 3:
        raise argparse.ArgumentTypeError(f"too many ':' segments in law spec {spec!r}")
    if len(parts) == 3 and parts[2]:
        for item in parts[2].split(","):
            if "=" not in item:
                raise argparse.ArgumentTypeError(f"bad parameter {item!r} in law spec")
            key, value = item.split("=", 1)
            key = key.strip()
            try:
                if key in ("asym0", "asymInf"):
                    tags[key] = _parse_tag(value.strip())
                else:
                    params[key] = float(value)
            except ValueError as err:
                raise argparse.ArgumentTypeError(f"bad parameter {item!r}: {err}")
    try:
        if kind == "builtin":
            if tags:
                raise argparse.ArgumentTypeError("asym overrides apply to expr laws only")
            return builtin(body, **params)
        return parse_law(
            body,
            params,
            asym_zero=tags.get("asym0"),
            asym_inf=tags.get("asymInf"),
        )
    except (UnknownLawError, ParameterError, ParseError) as err:
        raise argparse.ArgumentTypeError(str(err))


def _parse_range(text: str) -> tuple[float, float, int]:
    try:
        lo, hi, n = text.split(":")
        return float(lo), float(hi), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must be lo:hi:n, got {text!r}")


def _parse_bracket(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bracket must be lo:hi, got {text!r}")


def _show_config() -> None:
    print(f"bracket={effective.DEFAULT_BRACKET[0]:g}:{effective.DEFAULT_BRACKET[1]:g}")
    print(f"n_grid={effective.DEFAULT_N_GRID}")
    print(f"refine_rel_tol={effective.REFINE_REL_TOL:g}")
    print(f"critical_rel_tol={effective.CRITICAL_REL_TOL:g}")
    print(f"witness_rel_tol={space.WITNESS_REL_TOL:g}")
    print("member_tol=1e-9*(1+|E|)")
    print("member_tol_W=1e-9*(1+J^2)")
    print(f"dynamic_range={effective.DYNAMIC_RANGE:g}")
    print("r_min_guard=1e-9")
    print("r_max_guard=1e+9")
    print("ur_proximity_tol=1e-6")


def _add_law(p: argparse.ArgumentParser) -> None:
    p.add_argument("--law", type=parse_law_spec, required=True, help="force law spec")


def _add_search(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bracket", type=_parse_bracket, default=None, help="search bracket lo:hi")
    p.add_argument("--grid", type=int, default=None, help="search grid size")


def build_parser() -> _Parser:
    top = _Parser(prog="jespace", description=__doc__.splitlines()[0])
    top.add_argument(
        "--show-config", action="store_true", help="print solver defaults and exit"
    )
    sub = top.add_subparsers(dest="command")

    p = sub.add_parser("classify", parents=[], help="classify one (J, E) state")
    _add_law(p)
    p.add_argument("--J", type=float, required=True)
    p.add_argument("--E", type=float, required=True)
    p.add_argument("--route", choices=("V", "W", "both"), default="V")
    _add_search(p)

    p = sub.add_parser("scan", help="classify a (J, E) rectangle to CSV/PGM")
    _add_law(p)
    p.add_argument("--J-range", type=_parse_range, required=True, metavar="LO:HI:N")
    p.add_argument("--E-range", type=_parse_range, required=True, metavar="LO:HI:N")
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--pgm", default=None, help="optional PGM output path")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    _add_search(p)

    p = sub.add_parser("ur-curve", help="uniform-rotation states over a radius range")
    _add_law(p)
    p.add_argument("--s-range", type=_parse_range, required=True, metavar="LO:HI:N")
    p.add_argument("--out", required=True, help="CSV output path")

    p = sub.add_parser("radii", help="radius intervals admitting a uniform rotation")
    _add_law(p)
    _add_search(p)

    p = sub.add_parser("simulate", help="integrate an orbit to CSV")
    _add_law(p)
    p.add_argument("--r0", type=float, required=True)
    p.add_argument("--rdot0", type=float, default=0.0)
    p.add_argument("--phi0", type=float, default=0.0)
    p.add_argument("--J", type=float, required=True)
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--out", required=True, help="CSV output path")

    p = sub.add_parser("full-plane", help="is every (J, E) state realizable?")
    _add_law(p)

    p = sub.add_parser("check", help="closed-form oracle vs numeric classification")
    p.add_argument("--law-case", required=True, choices=sorted(CASE_ALIASES))
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--n", type=float, default=None)
    p.add_argument("--J-range", type=_parse_range, default=(-3.0, 3.0, 41), metavar="LO:HI:N")
    p.add_argument("--E-range", type=_parse_range, default=(-3.0, 3.0, 41), metavar="LO:HI:N")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    _add_search(p)
    return top


def _cmd_classify(args) -> int:
    law: ForceLaw = args.law
    state = effective.JEState(args.J, args.E)
    results = []
    if args.route in ("V", "both"):
        results.append(classify(law, state, bracket=args.bracket, n_grid=args.grid))
    if args.route in ("W", "both"):
        results.append(classify_via_W(law, state, bracket=args.bracket, n_grid=args.grid))
    print(f"law={law.describe()}")
    print(f"state=J:{args.J:.17g},E:{args.E:.17g}")
    for c in results:
        arg = "none" if c.evidence.arg_r is None else f"{c.evidence.arg_r:.17g}"
        print(
            f"route={c.route} verdict={c.member.value} margin={c.margin:.17g} "
            f"extremum={c.evidence.kind.value} value={c.evidence.value:.17g} "
            f"arg_r={arg} heuristic={int(c.evidence.heuristic)}"
        )
    match = is_uniform_rotation(law, state, bracket=args.bracket, n_grid=args.grid)
    if match.found:
        print(f"ur_witness={match.witness:.17g}")
    else:
        print("ur_witness=none")
    if args.route == "both":
        a, b = results
        off_band = abs(a.margin) > 10 * member_tol(args.E) and abs(b.margin) > 10 * member_tol_W(args.J)
        if off_band and a.is_member != b.is_member:
            print("route_divergence=1")
            return EXIT_ERROR
    primary = results[0]
    if primary.member is Membership.MEMBER:
        return EXIT_MEMBER
    if primary.member is Membership.BOUNDARY:
        return EXIT_BOUNDARY
    return EXIT_NON_MEMBER


def _cmd_scan(args) -> int:
    jlo, jhi, nj = args.J_range
    elo, ehi, ne = args.E_range
    grid = scan(
        args.law, (jlo, jhi), (elo, ehi), nj, ne,
        bracket=args.bracket, n_grid=args.grid, threads=args.threads,
    )
    write_csv(grid, args.out)
    if args.pgm:
        write_pgm(grid, args.pgm)
    print(f"cells={grid.shape[0] * grid.shape[1]} errors={len(grid.errors)}")
    return EXIT_MEMBER


def _cmd_ur_curve(args) -> int:
    lo, hi, n = args.s_range
    points = ur_curve(args.law, (lo, hi), n)
    with open(args.out, "w", newline="") as fh:
        fh.write("s,J,E,omega\n")
        for p in points:
            fh.write(f"{p.s:.17g},{p.J:.17g},{p.E:.17g},{p.angular_rate:.17g}\n")
    print(f"points={len(points)}")
    return EXIT_MEMBER


def _cmd_radii(args) -> int:
    result = allowed_radii(args.law, bracket=args.bracket, n_grid=args.grid)
    for lo, hi in result:
        print(f"{lo:.17g} {hi:.17g}")
    return EXIT_MEMBER


def _cmd_simulate(args) -> int:
    trace = simulate(
        args.law, r0=args.r0, r_dot0=args.rdot0, phi0=args.phi0, J=args.J,
        t_end=args.t_end, dt=args.dt,
    )
    write_trace_csv(trace, args.law, args.out)
    print(
        f"samples={len(trace)} outcome={trace.outcome.value} "
        f"max_J_drift={trace.max_J_drift:.17g} max_E_drift={trace.max_E_drift:.17g}"
    )
    return EXIT_MEMBER


def _cmd_full_plane(args) -> int:
    print(full_plane(args.law).value)
    return EXIT_MEMBER


def _cmd_check(args) -> int:
    case = canonical_case(args.law_case)
    params = {}
    for name in ("k", "q", "n"):
        value = getattr(args, name)
        if value is not None:
            params[name] = value
    law = law_for_case(case, **params)
    jlo, jhi, nj = args.J_range
    elo, ehi, ne = args.E_range
    grid = scan(
        law, (jlo, jhi), (elo, ehi), nj, ne,
        bracket=args.bracket, n_grid=args.grid, threads=args.threads,
    )
    cmp = compare_with_oracle(grid, case, params)
    print(
        f"case={case} cells={cmp.cells} boundary_band={cmp.band_cells} "
        f"off_band_disagreements={cmp.n_disagreements}"
    )
    for J, E, numeric, truth in cmp.disagreements[:20]:
        print(f"disagree J={J:.17g} E={E:.17g} numeric={int(numeric)} oracle={int(truth)}")
    return EXIT_MEMBER if cmp.n_disagreements == 0 else EXIT_NON_MEMBER


_COMMANDS = {
    "classify": _cmd_classify,
    "scan": _cmd_scan,
    "ur-curve": _cmd_ur_curve,
    "radii": _cmd_radii,
    "simulate": _cmd_simulate,
    "full-plane": _cmd_full_plane,
    "check": _cmd_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:  # argparse exits on usage errors and --help
        return int(exit_.code or 0)
    if args.show_config:
        _show_config()
        return EXIT_MEMBER
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (EvalDomainError, ParameterError, UnknownLawError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
