"""
Uniform rotations and where they live
=====================================

A circular motion at radius s exists exactly when u'(s) >= 0, and it
induces the state

    J^2 = s^3 u'(s),        E = u(s) + s u'(s) / 2.

This script traces that curve for several laws, checks the two
critical-point characterizations at each point (V'_J(s) = 0 with
V_J(s) = E, and W'_E(s) = 0 with W_E(s) = J^2), and finishes with the
oscillatory law u = q sin(1/r), whose admissible radii split into
infinitely many disjoint bands accumulating at the origin.
"""

import math

from jespace import allowed_radii, builtin, eval_V, eval_W, is_uniform_rotation, ur_curve

# The inverse-square law is degenerate in the nicest way: every radius
# carries a rotation but they all share the same two states (+-sqrt(2k), 0).
isq = builtin("inverse_square", k=1.0)
points = ur_curve(isq, (0.1, 10.0), 64)
print(f"inverse_square: {len(points)} radii, J^2 range "
      f"[{min(p.J**2 for p in points):.15f}, {max(p.J**2 for p in points):.15f}]")

# A repulsive elastic field admits no rotation at all.
print(f"repulsive_elastic: {len(ur_curve(builtin('repulsive_elastic', k=1.0), (0.1, 10.0), 64))} rotations")

print()
print(f"{'law':34s} {'s':>8s} {'J':>10s} {'E':>10s} {'V-check':>9s} {'W-check':>9s}")
for law in (
    builtin("gravitational", k=1.0),
    builtin("hooke", k=1.0),
    builtin("gravity_plus_inverse_square", k=1.0, q=1.0),
    builtin("power", k=1.0, n=2.0),
):
    for p in ur_curve(law, (0.5, 2.0), 3):
        v_gap = abs(eval_V(law, p.J, p.s) - p.E)
        w_gap = abs(eval_W(law, p.E, p.s) - p.J**2)
        assert is_uniform_rotation(law, (p.J, p.E)).found
        print(f"{law.describe():34s} {p.s:8.4f} {p.J:10.6f} {p.E:10.6f} {v_gap:9.1e} {w_gap:9.1e}")

# Oscillatory law: rotations exist only where cos(1/s) <= 0, i.e. on the
# bands [2/((4k+3)pi), 2/((4k+1)pi)].
print()
osc = builtin("oscillatory", q=1.0)
bands = allowed_radii(osc, bracket=(0.01, 1.0))
print(f"oscillatory admissible radii in [0.01, 1]: {len(bands)} bands")
for lo, hi in list(bands)[-4:]:
    k = round((2.0 / (math.pi * lo) - 3.0) / 4.0)
    print(f"  [{lo:.8f}, {hi:.8f}]   band index k={k}")

# Equilibria (J = 0) sit at the band endpoints where u' itself vanishes;
# their states are (0, +q) and (0, -q).
for s in (2.0 / math.pi, 2.0 / (3.0 * math.pi)):
    from jespace import uniform_rotation_at

    ur = uniform_rotation_at(osc, s)
    print(f"equilibrium at s={s:.6f}: state (J, E) = ({ur.J:g}, {ur.E:g})")
