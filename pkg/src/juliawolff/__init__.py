"""Hyperbolic geometry of the disk and the Julia-Wolff theory of its self-maps."""

from .errors import (
    BurnsKrantzViolation,
    DomainError,
    JuliaWolffError,
    ModelMismatchError,
    NonConvergenceError,
    PoleError,
    PreconditionError,
    SpecError,
)
from .fixedpoints import (
    AnalysisReport,
    FixedPointRecord,
    analyze,
    angular_derivative,
    boundary_fixed_points,
    denjoy_wolff,
    interior_fixed_point,
    wolff_approximants,
)
from .geometry import (
    CayleyMap,
    DiskAutomorphism,
    EuclideanCircle,
    Horocycle,
    MobiusTransform,
    NonEuclideanCircle,
    cayley_eval,
    cayley_inverse_eval,
    disk_automorphism_eval,
    horocycle_level,
    horocycle_to_euclidean,
    hyperbolic_distance,
    noneuclidean_circle_to_euclidean,
    pseudo_distance,
    swap_points,
)
from .selfmaps import (
    SelfMap,
    blaschke,
    compose,
    conjugate_to_halfplane,
    derivative,
    evaluate,
    identity,
    load_map,
    mobius,
    polynomial,
    rescale,
    validate_selfmap,
)

__version__ = "0.1.0"
