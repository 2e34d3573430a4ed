"""Exact-arithmetic tools for tropical Jacobians and circle covers of metric graphs.

The package is organized bottom-up:

* :mod:`tropjac.exact_lattice` -- rational matrices and integer normal forms;
* :mod:`tropjac.torus_category` -- integral tori, their morphisms, kernels,
  cokernels, and Stein factorizations;
* :mod:`tropjac.tav` -- polarizations, exact sequences, and rational points;
* :mod:`tropjac.curves_covers` -- metric graphs, genus-2 curve models, covers
  of circles, and Abel-Jacobi maps;
* :mod:`tropjac.cover_analysis` -- pushforward/pullback morphisms and the
  numerical invariants of a cover;
* :mod:`tropjac.split_jacobian` -- complementary covers and the splitting
  isogeny package;
* :mod:`tropjac.cli` -- the ``tropjac`` command-line entry point.

The names most callers need are re-exported here.  Every computation is exact:
inputs are integers or :class:`fractions.Fraction`, and floats are rejected.
"""

from .cover_analysis import (
    GammaData,
    OptimalityVerdict,
    TorsionDivisor,
    component_count,
    factor_pushforward,
    is_optimal,
    kernel_length,
    pullback_kernel,
    pullback_morphism,
    pushforward_morphism,
    q_gamma_profile,
    quotient_and_gamma,
)
from .curves_covers import (
    DumbbellCover,
    DumbbellCurve,
    GeneralCircleCover,
    MetricGraph,
    ThetaCover,
    ThetaCurve,
    ValidationReport,
    abel_jacobi,
    circle_graph,
    cover_degree,
    jacobian,
    ramification_index,
    require_valid,
    target_length,
    validate_cover,
    validate_general_cover,
)
from .errors import (
    CompatibilityViolation,
    ContainmentViolation,
    InvalidCover,
    NotExact,
    NotFinite,
    NotInjective,
    NotIsogeny,
    NotOptimal,
    NotProductTarget,
    NotSurjective,
    NotTorsion,
    OffsetOutOfRange,
    ParseError,
    ShapeMismatch,
    SourceMismatch,
    TropjacError,
    ValidationError,
)
from .exact_lattice import Matrix
from .split_jacobian import (
    ComplementaryCover,
    SplitReport,
    complementary_cover,
    complementary_pushforward,
    cover_from_splitting,
    splitting_isogeny,
    verify_split_package,
)
from .tav import (
    ExactSequence,
    Polarization,
    PolarizedVariety,
    check_exact_sequence,
    dual_polarization,
    dualize_sequence,
    is_polarized_isogeny,
    isogeny_kernel_points,
    point_order,
    polarization_type,
    principal_polarization,
    pullback_polarization,
    pushforward_polarization,
    quotient_by_finite_subgroup,
    quotient_by_subvariety,
    reduce_point,
    subgroup_generated,
)
from .torus_category import (
    IntegralTorus,
    SteinFactorization,
    TorusMorphism,
    circle,
    classify,
    coequalizer,
    cokernel,
    compose,
    dual,
    dual_morphism,
    equalizer,
    identity_morphism,
    image,
    kernel0,
    kernel_component_count,
    product,
    quotient_by_subtorus,
    stein_factorization,
    zero_morphism,
    zero_torus,
)

__version__ = "0.1.0"

__all__ = [
    "CompatibilityViolation",
    "ComplementaryCover",
    "ContainmentViolation",
    "DumbbellCover",
    "DumbbellCurve",
    "ExactSequence",
    "GammaData",
    "GeneralCircleCover",
    "IntegralTorus",
    "InvalidCover",
    "Matrix",
    "MetricGraph",
    "NotExact",
    "NotFinite",
    "NotInjective",
    "NotIsogeny",
    "NotOptimal",
    "NotProductTarget",
    "NotSurjective",
    "NotTorsion",
    "OffsetOutOfRange",
    "OptimalityVerdict",
    "ParseError",
    "Polarization",
    "PolarizedVariety",
    "ShapeMismatch",
    "SourceMismatch",
    "SplitReport",
    "SteinFactorization",
    "ThetaCover",
    "ThetaCurve",
    "TorsionDivisor",
    "TorusMorphism",
    "TropjacError",
    "ValidationError",
    "ValidationReport",
    "abel_jacobi",
    "check_exact_sequence",
    "circle",
    "circle_graph",
    "classify",
    "coequalizer",
    "cokernel",
    "complementary_cover",
    "complementary_pushforward",
    "component_count",
    "compose",
    "cover_degree",
    "cover_from_splitting",
    "dual",
    "dual_morphism",
    "dual_polarization",
    "dualize_sequence",
    "equalizer",
    "factor_pushforward",
    "identity_morphism",
    "image",
    "is_optimal",
    "is_polarized_isogeny",
    "isogeny_kernel_points",
    "jacobian",
    "kernel0",
    "kernel_component_count",
    "kernel_length",
    "point_order",
    "polarization_type",
    "principal_polarization",
    "product",
    "pullback_kernel",
    "pullback_morphism",
    "pullback_polarization",
    "pushforward_morphism",
    "pushforward_polarization",
    "q_gamma_profile",
    "quotient_and_gamma",
    "quotient_by_finite_subgroup",
    "quotient_by_subtorus",
    "quotient_by_subvariety",
    "ramification_index",
    "reduce_point",
    "require_valid",
    "splitting_isogeny",
    "stein_factorization",
    "subgroup_generated",
    "target_length",
    "validate_cover",
    "validate_general_cover",
    "verify_split_package",
    "zero_morphism",
    "zero_torus",
]
