"""Exact certification of two-variable Jacobian pairs as automorphisms."""

__version__ = "0.1.0"

from .bipoly import BiPoly, compose, degree_data, derivative, jacobian, swap_xy  # noqa: E402
from .checker import (  # noqa: E402
    Certificate,
    CompositionWitness,
    Outcome,
    ShapeParams,
    TheoremTag,
    Verdict,
    build_witness,
    check_paper_theorems,
    check_proposition,
    check_total_degree,
    check_unit_jacobian,
    decide,
    exclude_gcd8,
    recheck_certificate,
    shape_constraints,
)
from .invariants import DegreeInvariants, OrientationProfile, compute_invariants  # noqa: E402
from .inverter import (  # noqa: E402
    Decomposition,
    ElementaryStep,
    PolyMap,
    invert_tame,
    invert_triangular,
    verify_inverse,
)
from .numtheory import (  # noqa: E402
    DegreeSet,
    LemmaWitness,
    classify,
    find_L,
    find_prime_in_progression,
    is_prime,
    next_prime_above,
)
from .parser import format_poly, parse_poly  # noqa: E402
