"""Exact Somos sequences, elliptic divisibility sequences and their relations.

Every Somos-4 also satisfies a three-term Somos-k relation for each k >= 5;
:func:`lift_somos4` derives and checks them.
"""

from .curve import (
    INFINITY,
    CurveModel,
    EllipticData,
    Point,
    add_points,
    constants_from_e,
    e_sequence,
    ebar_sequence,
    on_curve,
    verify_corollary,
    verify_prop_basic,
)
from .exact_field import QuadScalar, Rat, format_scalar, parse_scalar
from .lift import (
    CompanionEDS,
    companion_eds,
    elliptic_data_from_somos4,
    fit_somos4,
    lift_somos4,
    somos_k_relation,
    symmetric_kernel_check,
    twist_equivalence,
)
from .sequence import (
    INF,
    Report,
    SomosRelation,
    TwoSidedSequence,
    e_of,
    extend_somos4,
    extend_somos5,
    verify_relation,
)
from .somos5 import (
    Somos5Data,
    fit_somos5,
    interleave_split,
    somos5_data,
    somos5_from_curve,
    somos5_odd_gap_relation,
)
from .ward import (
    EdsInitials,
    check_division_property,
    eds_generate,
    verify_ward_full,
    verify_ward_general,
)

__version__ = "0.1.0"
