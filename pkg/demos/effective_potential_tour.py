"""
A tour of the effective potential machinery
===========================================

For a radial force law u(r) and a state (J, E), motion is governed by two
auxiliary functions of the radius:

    V_J(r) = J^2 / (2 r^2) + u(r)        (effective force function)
    W_E(r) = 2 r^2 (E - u(r))            (effective angular momentum)

Whether (J, E) is realizable comes down to inf V_J versus E, or
equivalently sup W_E versus J^2.  This script walks the built-in law
catalogue and shows what the extremum engine reports in each regime:
attained interior minima, limits at the bracket edges, and unbounded
behaviour proved from the laws' asymptotic tags.
"""

from jespace import builtin, eval_V, eval_W, inf_V, sup_W

laws = [
    builtin("zero"),
    builtin("gravitational", k=1.0),
    builtin("inverse_square", k=1.0),
    builtin("hooke", k=1.0),
    builtin("repulsive_elastic", k=1.0),
    builtin("gravity_plus_inverse_square", k=1.0, q=1.0),
    builtin("oscillatory", q=1.0),
]

# Pointwise values first: the two functions are linked by the identity
# 2 r^2 (E - V_J(r)) = W_E(r) - J^2 at every radius.
law = builtin("gravitational", k=1.0)
J, E = 1.0, -0.5
for r in (0.5, 1.0, 2.0):
    lhs = 2 * r * r * (E - eval_V(law, J, r))
    rhs = eval_W(law, E, r) - J * J
    print(f"r={r:4.1f}  V={eval_V(law, J, r):+.6f}  W={eval_W(law, E, r):+.6f}  identity gap={lhs - rhs:.1e}")

print()
print(f"{'law':38s} {'inf V (J=1)':>34s} {'sup W (E=-0.4)':>34s}")
for law in laws:
    lo = inf_V(law, 1.0)
    hi = sup_W(law, -0.4)

    def fmt(rep):
        where = f" at r={rep.arg_r:.4g}" if rep.arg_r is not None else ""
        flag = " (heuristic)" if rep.heuristic else ""
        return f"{rep.value:+.4g} [{rep.kind.value}{where}]{flag}"

    print(f"{law.describe():38s} {fmt(lo):>34s} {fmt(hi):>34s}")

# The gravitational minimum sits exactly where a circular orbit lives:
# r* = J^2/k, with V(r*) = -k^2 / (2 J^2).
print()
for J in (0.5, 1.0, 2.0):
    rep = inf_V(builtin("gravitational", k=1.0), J)
    print(
        f"J={J:3.1f}: argmin={rep.arg_r:.12f} (expect {J * J:.1f}), "
        f"value={rep.value:.12f} (expect {-0.5 / (J * J):.4f})"
    )
