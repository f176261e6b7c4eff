"""Numerical laboratory for Bohr-radius majorant functionals.

Truncated multivariate power series, lp-ball Reinhardt domains, planar
convex targets, the two built-in semi-norm families with their axiom
harness, and radius-search experiments with seeded reproducible records.
"""

from .domains import ReinhardtDomain, boundary_sample, contains, monomial_sup, parse_domain
from .functionals import (
    MAJORANT_SUP,
    TERMWISE_SUP,
    BohrVerdict,
    SeminormFamily,
    bohr_condition,
    check_axioms,
    landau_caratheodory_check,
    majorant_value,
    r1_norm,
    r2_norm,
    seminorm_eval,
)
from .search import (
    AdmissibleGenerator,
    RadiusEstimate,
    bracket_consistency,
    family_infimum,
    function_radius,
    geometric_alpha_grid,
    independence_experiment,
    probe_no_violation,
    witness_upper_bound_l1,
)
from .series import (
    TruncatedPowerSeries,
    compose_linear,
    compose_series,
    extract_coefficients,
    mobius_series,
    multiply,
    rotate,
)
from .targets import (
    ConvexPolygon,
    Disk,
    HalfPlane,
    RegularConvexityWitness,
    Strip,
    WholePlane,
    disk_to_target_map,
    hull_distance,
    parse_target,
    regular_convexity_witness,
    supporting_halfplane,
)

__version__ = "0.1.0"
