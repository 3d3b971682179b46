"""Angular momentum-energy states of planar central-force motion.

Classify which (J, E) pairs are realizable by a motion in a radial force
law, enumerate the states coming from uniform (circular) rotations, scan
and render (J, E) rectangles, and integrate orbits with conservation
monitors.  Closed-form descriptions of the classic force-law families are
included as oracles for validating the numeric engine.
"""

from .dynamics import (
    KineticReport,
    OrbitTrace,
    Outcome,
    InequalityReport,
    check_trajectory_inequalities,
    kinetic_check,
    simulate,
    write_trace_csv,
)
from .effective import (
    DEFAULT_BRACKET,
    DEFAULT_N_GRID,
    ExtremumKind,
    ExtremumReport,
    JEState,
    eval_V,
    eval_W,
    inf_V,
    sup_W,
)
from .expressions import (
    EvalDomainError,
    NonConstantExponentError,
    ParseError,
    UnboundParameterError,
    derivative,
    evaluate,
    parse_expression,
)
from .forcelaw import (
    BUILTIN_NAMES,
    AsymTag,
    ForceLaw,
    ParameterError,
    TagKind,
    UnknownLawError,
    builtin,
    parse_law,
    shift_law,
)
from .oracles import ORACLE_CASES, OracleVerdict, law_for_case, oracle
from .scan import (
    OracleComparison,
    ScanGrid,
    compare_with_oracle,
    read_csv,
    scan,
    write_csv,
    write_pgm,
)
from .space import (
    Classification,
    FullPlaneVerdict,
    Membership,
    RadiusIntervals,
    RotationMatch,
    UniformRotation,
    allowed_radii,
    classify,
    classify_via_W,
    critical_radii,
    full_plane,
    is_uniform_rotation,
    member_tol,
    member_tol_W,
    uniform_rotation_at,
    ur_curve,
)

__version__ = "0.1.0"
