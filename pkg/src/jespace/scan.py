"""Region scans over (J, E) rectangles and their on-disk formats.

A scan classifies every lattice point of a linear (J, E) grid and records
per cell: membership, boundary attainment, uniform-rotation flag, and the
margin ``E - inf V_J``.  Since ``inf V_J`` depends on J only and the
rotation witnesses likewise, both are computed once per J column, which
keeps a 41x41 scan well under a second without changing any verdict.

Formats (bit-exact, deterministic across runs and worker counts):

* CSV: header ``J,E,member,boundary,ur,margin``; rows E-major then J;
  flags 0/1; floats with 17 significant digits.
* PGM: plain text (magic ``P2``), width nJ, height nE, maxval 255; one
  pixel value per line; 0 = non-member, 128 = member, 255 = boundary or
  uniform-rotation cell (precedence over member shading); the top row is
  the highest E.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .effective import inf_V
from .expressions import EvalDomainError
from .forcelaw import ForceLaw
from .oracles import canonical_case, oracle
from .space import Membership, critical_radii, member_tol, verdict_from_inf

__all__ = [
    "ScanGrid",
    "scan",
    "write_csv",
    "read_csv",
    "write_pgm",
    "OracleComparison",
    "compare_with_oracle",
]


@dataclass
class ScanGrid:
    """Classification results on a linear (J, E) lattice.

    Cell arrays are indexed ``[iE, iJ]`` with both axes ascending."""

    J_axis: np.ndarray
    E_axis: np.ndarray
    member: np.ndarray  # bool: in the state space (boundary counts)
    boundary: np.ndarray  # bool: boundary-attained verdict
    ur: np.ndarray  # bool: corresponds to a uniform rotation
    margin: np.ndarray  # float: E - inf V_J (nan where evaluation failed)
    errors: tuple[tuple[int, str], ...] = field(default_factory=tuple)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.E_axis), len(self.J_axis))


def _column(law, J, E_axis, bracket, n_grid):
    """Classify one J column; returns (member, boundary, ur, margin, err)."""
    nE = len(E_axis)
    member = np.zeros(nE, dtype=bool)
    boundary = np.zeros(nE, dtype=bool)
    ur = np.zeros(nE, dtype=bool)
    margin = np.full(nE, np.nan)
    try:
        report = inf_V(law, J, bracket=bracket, n_grid=n_grid)
        crits = critical_radii(law, J, bracket=bracket, n_grid=n_grid)
    except EvalDomainError as err:
        return member, boundary, ur, margin, str(err)
    crit_vals = [0.5 * J * J / (s * s) + float(law.u(s)) for s in crits]
    for i, E in enumerate(E_axis):
        verdict, m = verdict_from_inf(report, float(E))
        member[i] = verdict is not Membership.NON_MEMBER
        boundary[i] = verdict is Membership.BOUNDARY
        margin[i] = m
        tol = member_tol(float(E))
        ur[i] = any(abs(v - E) <= tol for v in crit_vals)
    return member, boundary, ur, margin, None


def scan(
    law: ForceLaw,
    J_range: tuple[float, float],
    E_range: tuple[float, float],
    nJ: int,
    nE: int,
    bracket: tuple[float, float] | None = None,
    n_grid: int | None = None,
    threads: int | None = None,
) -> ScanGrid:
    """Classify every lattice point of the rectangle.

    Evaluation errors are recorded per column (margin nan), not fatal.
    Output is deterministic regardless of the worker count."""
    if nJ < 2 or nE < 2:
        raise ValueError("nJ and nE must be at least 2")
    if not all(map(math.isfinite, (*J_range, *E_range))):
        raise ValueError("ranges must be finite")
    J_axis = np.linspace(J_range[0], J_range[1], nJ)
    E_axis = np.linspace(E_range[0], E_range[1], nE)
    if np.any(np.diff(J_axis) <= 0) or np.any(np.diff(E_axis) <= 0):
        raise ValueError("axes must be strictly increasing")

    work = lambda iJ: _column(law, float(J_axis[iJ]), E_axis, bracket, n_grid)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            columns = list(pool.map(work, range(nJ)))
    else:
        columns = [work(iJ) for iJ in range(nJ)]

    member = np.zeros((nE, nJ), dtype=bool)
    boundary = np.zeros((nE, nJ), dtype=bool)
    ur = np.zeros((nE, nJ), dtype=bool)
    margin = np.full((nE, nJ), np.nan)
    errors: list[tuple[int, str]] = []
    for iJ, (m, b, u, g, err) in enumerate(columns):
        member[:, iJ] = m
        boundary[:, iJ] = b
        ur[:, iJ] = u
        margin[:, iJ] = g
        if err is not None:
            errors.append((iJ, err))
    return ScanGrid(J_axis, E_axis, member, boundary, ur, margin, tuple(errors))


# --- CSV ---------------------------------------------------------------------


def write_csv(grid: ScanGrid, path) -> None:
    nE, nJ = grid.shape
    with open(path, "w", newline="") as fh:
        fh.write("J,E,member,boundary,ur,margin\n")
        for iE in range(nE):
            for iJ in range(nJ):
                fh.write(
                    f"{grid.J_axis[iJ]:.17g},{grid.E_axis[iE]:.17g},"
                    f"{int(grid.member[iE, iJ])},{int(grid.boundary[iE, iJ])},"
                    f"{int(grid.ur[iE, iJ])},{grid.margin[iE, iJ]:.17g}\n"
                )


def read_csv(path) -> ScanGrid:
    """Inverse of :func:`write_csv`; round-trips bit-exactly."""
    with open(path, "r", newline="") as fh:
        header = fh.readline().strip()
        if header != "J,E,member,boundary,ur,margin":
            raise ValueError(f"unexpected header {header!r}")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    Js = [float(row[0]) for row in rows]
    Es = [float(row[1]) for row in rows]
    J_axis = np.asarray(sorted(set(Js)))
    E_axis = np.asarray(sorted(set(Es)))
    nJ, nE = len(J_axis), len(E_axis)
    if nJ * nE != len(rows):
        raise ValueError("grid is not a full rectangle")
    member = np.zeros((nE, nJ), dtype=bool)
    boundary = np.zeros((nE, nJ), dtype=bool)
    ur = np.zeros((nE, nJ), dtype=bool)
    margin = np.full((nE, nJ), np.nan)
    idx = 0
    for iE in range(nE):
        for iJ in range(nJ):
            row = rows[idx]
            idx += 1
            member[iE, iJ] = row[2] == "1"
            boundary[iE, iJ] = row[3] == "1"
            ur[iE, iJ] = row[4] == "1"
            margin[iE, iJ] = float(row[5])
    return ScanGrid(J_axis, E_axis, member, boundary, ur, margin)


# --- PGM ---------------------------------------------------------------------


def write_pgm(grid: ScanGrid, path) -> None:
    nE, nJ = grid.shape
    lines = [f"P2\n{nJ} {nE}\n255\n"]
    for iE in range(nE - 1, -1, -1):  # top row = highest E
        for iJ in range(nJ):
            if grid.boundary[iE, iJ] or grid.ur[iE, iJ]:
                px = 255
            elif grid.member[iE, iJ]:
                px = 128
            else:
                px = 0
            lines.append(f"{px}\n")
    with open(path, "w", newline="") as fh:
        fh.write("".join(lines))


# --- Oracle cross-validation ---------------------------------------------------


@dataclass(frozen=True)
class OracleComparison:
    """Cell-by-cell agreement between a scan and a closed-form oracle.

    Cells whose |margin| is within ``band_factor`` boundary tolerances are
    the boundary band: disagreement there is permitted and only counted."""

    cells: int
    band_cells: int
    disagreements: tuple[tuple[float, float, bool, bool], ...]  # (J, E, numeric, oracle)

    @property
    def n_disagreements(self) -> int:
        return len(self.disagreements)


def compare_with_oracle(
    grid: ScanGrid, case: str, params, band_factor: float = 10.0
) -> OracleComparison:
    case = canonical_case(case)
    nE, nJ = grid.shape
    band = 0
    bad = []
    for iE in range(nE):
        E = float(grid.E_axis[iE])
        band_tol = band_factor * member_tol(E)
        for iJ in range(nJ):
            J = float(grid.J_axis[iJ])
            m = float(grid.margin[iE, iJ])
            if math.isnan(m) or abs(m) <= band_tol:
                band += 1
                continue
            numeric = bool(grid.member[iE, iJ])
            truth = oracle(case, params, J, E).in_space
            if numeric != truth:
                bad.append((J, E, numeric, truth))
    return OracleComparison(nE * nJ, band, tuple(bad))
