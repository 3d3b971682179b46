import math

import numpy as np
import pytest

from jespace.forcelaw import ParameterError
from jespace.oracles import canonical_case, law_for_case, oracle
from jespace.scan import compare_with_oracle, scan
from jespace.space import classify


class TestCaseRegistry:
    def test_aliases(self):
        assert canonical_case("4.2") == "gravitational"
        assert canonical_case("oscillatory") == "oscillatory"

    def test_unknown(self):
        with pytest.raises(ParameterError):
            canonical_case("4.9")

    def test_law_for_case(self):
        law = law_for_case("4.6", k=1.0, q=2.0)
        assert law.name == "gravity_plus_inverse_square"

    def test_param_constraints_checked(self):
        with pytest.raises(ParameterError):
            oracle("4.2", {"k": -1.0}, 1.0, 1.0)


class TestClosedForms:
    def test_zero(self):
        assert oracle("zero", {}, 0.5, 1.0).in_space
        assert not oracle("zero", {}, 0.5, 0.0).in_space
        assert oracle("zero", {}, 0.0, 0.0).in_space
        assert oracle("zero", {}, 0.0, 0.0).in_ur
        assert not oracle("zero", {}, 1.0, 1.0).in_ur

    def test_constant_is_shifted_zero(self):
        # the constant law c shifts the zero-law sets by (0, c)
        c = 2.5
        for J in np.linspace(-2, 2, 11):
            for E in np.linspace(-2, 2, 11):
                a = oracle("constant", {"k": c}, float(J), float(E) + c)
                b = oracle("zero", {}, float(J), float(E))
                assert a.in_space == b.in_space

    def test_gravitational(self):
        v = oracle("4.2", {"k": 1.0}, 1.0, -0.5)
        assert v.in_space and v.in_ur
        assert not oracle("4.2", {"k": 1.0}, 1.0, -0.6).in_space
        assert oracle("4.2", {"k": 1.0}, 0.0, -100.0).in_space  # J = 0 row

    def test_inverse_square_branches(self):
        k = {"k": 1.0}
        assert oracle("4.3", k, 2.0, 1.0).in_space  # J^2 > 2k needs E > 0
        assert not oracle("4.3", k, 2.0, 0.0).in_space
        assert oracle("4.3", k, math.sqrt(2.0), 0.0).in_space is (2.0 == math.sqrt(2.0) ** 2)
        assert oracle("4.3", k, 1.0, -5.0).in_space  # J^2 < 2k: all E
        v = oracle("4.3", k, math.sqrt(2.0), 0.0)
        assert v.in_ur

    def test_hooke(self):
        k = {"k": 1.0}
        v = oracle("4.4", k, 1.0, 1.0)
        assert v.in_space and v.in_ur
        assert not oracle("4.4", k, 0.0, 0.0).in_space  # origin removed
        assert not oracle("4.4", k, 1.0, 0.5).in_space

    def test_repulsive(self):
        v = oracle("4.5", {"k": 1.0}, 37.0, -1e6)
        assert v.in_space and not v.in_ur

    def test_combined_field(self):
        kq = {"k": 1.0, "q": 1.0}
        assert oracle("4.6", kq, 1.0, -100.0).in_space  # J^2 <= 2q
        assert oracle("4.6", kq, 2.0, -0.25).in_space
        assert oracle("4.6", kq, 2.0, -0.25).in_ur  # E(J^2-2q) = -1/2, E < 0
        assert not oracle("4.6", kq, 2.0, -0.3).in_space

    def test_power_half_reduces_to_gravitational(self):
        for J in np.linspace(-2, 2, 9):
            for E in np.linspace(-2, 2, 9):
                a = oracle("4.7", {"k": 1.0, "n": 0.5}, float(J), float(E))
                b = oracle("4.2", {"k": 1.0}, float(J), float(E))
                assert a.in_space == b.in_space

    def test_power_n1_reduces_to_inverse_square(self):
        a = oracle("4.7", {"k": 1.0, "n": 1.0}, 2.0, -1.0)
        b = oracle("4.3", {"k": 1.0}, 2.0, -1.0)
        assert a.in_space == b.in_space

    def test_power_steep_whole_plane(self):
        assert oracle("4.7", {"k": 1.0, "n": 2.0}, 5.0, -1e9).in_space
        assert oracle("4.7", {"k": 1.0, "n": 2.0}, 2.0, 1.0).in_ur  # E * J^-4 = 1/16
        assert not oracle("4.7", {"k": 1.0, "n": 2.0}, 0.0, 1.0).in_ur  # curve never hits J=0

    def test_oscillatory_literal_set(self):
        q = {"q": 1.0}
        assert oracle("4.8", q, 0.0, -1.0).in_space  # the adjoined isolated point
        assert oracle("4.8", q, 2.0, -0.5).in_space
        assert not oracle("4.8", q, 0.0, -1.5).in_space
        assert not oracle("4.8", q, 0.5, -1.0).in_space

    def test_oscillatory_rotation_curve(self):
        # points constructed on the curve are accepted, nearby ones rejected
        q = 1.0
        s = 0.3
        c = math.cos(1.0 / s)
        J = math.sqrt(-q * s * c)
        E = q * math.sin(1.0 / s) - (q / (2 * s)) * c
        assert oracle("4.8", {"q": q}, J, E).in_ur
        assert not oracle("4.8", {"q": q}, J + 0.05, E).in_ur


UR_CURVE_CASES = [
    ("zero", {}, (0.1, 10.0)),
    ("constant", {"k": 1.0}, (0.1, 10.0)),
    ("gravitational", {"k": 1.0}, (0.1, 10.0)),
    ("inverse_square", {"k": 1.0}, (0.1, 10.0)),
    ("hooke", {"k": 1.0}, (0.1, 10.0)),
    ("gravity_plus_inverse_square", {"k": 1.0, "q": 1.0}, (0.1, 10.0)),
    ("power", {"k": 1.0, "n": 0.5}, (0.1, 10.0)),
    ("power", {"k": 1.0, "n": 2.0}, (0.1, 10.0)),
    ("oscillatory", {"q": 1.0}, (0.05, 1.0)),
]


@pytest.mark.parametrize("case,params,s_range", UR_CURVE_CASES, ids=lambda v: str(v)[:28])
def test_every_curve_point_accepted_by_oracle(case, params, s_range):
    from jespace.space import ur_curve

    law = law_for_case(case, **params)
    points = ur_curve(law, s_range, 64)
    for p in points:
        assert oracle(case, params, p.J, p.E).in_ur, (case, p)


class TestOracleVsNumeric:
    def test_gravitational_grid(self):
        law = law_for_case("4.2", k=1.0)
        grid = scan(law, (-3, 3), (-3, 3), 21, 21)
        cmp = compare_with_oracle(grid, "4.2", {"k": 1.0})
        assert cmp.n_disagreements == 0

    def test_member_fraction_matches_direct_enumeration(self):
        # count grid cells with E*J^2 >= -1/2 by brute force and compare
        law = law_for_case("4.2", k=1.0)
        Js = np.linspace(-3, 3, 21)
        Es = np.linspace(-3, 3, 21)
        brute = sum(
            1 for J in Js for E in Es if float(E) * float(J) ** 2 >= -0.5
        )
        numeric = sum(
            1 for J in Js for E in Es if classify(law, (float(J), float(E))).is_member
        )
        assert numeric == brute

    def test_oscillatory_numeric_is_subset_of_literal_set(self):
        # The literal closed-form set for the oscillatory law over-covers the
        # inf-V characterization at J != 0 (the infimum exceeds -q once the
        # centrifugal term is present), so numeric membership must imply
        # closed-form membership, never the reverse.
        law = law_for_case("4.8", q=1.0)
        disagreements = 0
        for J in np.linspace(-2, 2, 9):
            for E in np.linspace(-1.5, 1.5, 13):
                numeric = classify(law, (float(J), float(E))).is_member
                literal = oracle("4.8", {"q": 1.0}, float(J), float(E)).in_space
                if numeric:
                    assert literal
                if numeric != literal:
                    disagreements += 1
        assert disagreements > 0  # the mismatch is real, not hypothetical

    def test_oscillatory_momentum_free_column_agrees(self):
        law = law_for_case("4.8", q=1.0)
        for E in (-0.999, -0.5, 0.0, 2.0):
            assert classify(law, (0.0, E)).is_member
            assert oracle("4.8", {"q": 1.0}, 0.0, E).in_space
        c = classify(law, (0.0, -1.0))
        assert c.member.value == "boundary-attained"
        assert not classify(law, (0.0, -1.0001)).is_member
