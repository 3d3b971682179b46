"""
Mapping the admissible (J, E) region
====================================

Scanning a rectangle of angular momentum-energy pairs classifies every
lattice point and writes two portable artifacts per law: a CSV table
(one row per cell with membership, boundary, rotation flag, and the
margin E - inf V) and a plain-text PGM image where dark pixels are
excluded states, gray pixels are realizable states, and white pixels sit
on the attained boundary or correspond to a uniform rotation.

The gravitational picture shows the classic hyperbola-bounded exclusion
E J^2 < -k^2/2 in the lower half-plane; the repulsive-elastic picture is
uniformly gray because every state is realizable there.
"""

from pathlib import Path

from jespace import builtin, scan, write_csv, write_pgm

out_dir = Path(__file__).resolve().parent / "output"
out_dir.mkdir(exist_ok=True)

atlas = [
    ("gravitational", builtin("gravitational", k=1.0), (-2.0, 2.0), (-2.0, 1.0)),
    ("hooke", builtin("hooke", k=1.0), (-2.0, 2.0), (-1.0, 3.0)),
    ("repulsive_elastic", builtin("repulsive_elastic", k=1.0), (-2.0, 2.0), (-2.0, 2.0)),
    ("inverse_square", builtin("inverse_square", k=1.0), (-3.0, 3.0), (-2.0, 2.0)),
]

for name, law, j_range, e_range in atlas:
    grid = scan(law, j_range, e_range, 121, 101, threads=2)
    csv_path = out_dir / f"{name}.csv"
    pgm_path = out_dir / f"{name}.pgm"
    write_csv(grid, csv_path)
    write_pgm(grid, pgm_path)
    total = grid.shape[0] * grid.shape[1]
    print(
        f"{name:20s} member {int(grid.member.sum()):5d}/{total}  "
        f"boundary {int(grid.boundary.sum()):3d}  rotations {int(grid.ur.sum()):3d}  "
        f"-> {csv_path.name}, {pgm_path.name}"
    )

print(f"\nartifacts in {out_dir}")
