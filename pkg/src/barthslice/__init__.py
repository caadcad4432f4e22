"""Exact certification of the Barth slice of instanton monads.

The package reconstructs the normalized slice coordinates, solves the
linear fiber systems over GF(p) or the rationals with exact arithmetic,
and emits reproducible JSON certificates for fiber dimensions, the pencil
rank condition, monad-level checks, Jacobian transversality, and the
canonical four-dimensional solution family at large charge.
"""

from ._version import __version__
from .barth import (
    FiberData,
    GroupElement,
    HalfData,
    SliceData,
    SliceResidual,
    apply_group,
    canonical_fiber_solutions,
    compose_group,
    fiber_from_vec,
    fiber_system,
    half_from_vec,
    jacobian,
    random_group_element,
    random_orthogonal,
    random_sl2,
    residual,
    residual_cross,
    skew_index,
    sym_index,
    vec_fiber,
    vec_half,
    vec_skew,
    vec_slice,
    wedge,
)
from .census import (
    CERTIFICATE_VERSION,
    Certificate,
    DimensionRecord,
    WitnessReport,
    census_threshold,
    certificate_ok,
    dimension_formulas,
    expected_kernel_dim,
    family_check,
    fiber_census,
    sample_half,
    witness_certificate,
    witness_pipeline,
)
from .errors import (
    BarthSliceError,
    DomainError,
    InvariantError,
    SamplingError,
    ShapeError,
    WitnessUnavailable,
)
from .fields import DEFAULT_PRIME, PrimeField, RationalField, field_arithmetic, sample_element
from .linalg import Matrix, inverse, kernel_basis, matvec, rank, rref, spans_match
from .monad import (
    GammaMatrix,
    GramBlocks,
    PencilReport,
    build_gamma,
    evaluate_alpha,
    gram_blocks,
    monad_condition,
    pencil_check,
    point_rank_check,
    symplectic_form,
)
from .poly import Poly, poly_gcd
from .rng import ALGORITHM_ID, SeededRng
from .selftest import SelftestResult, run_selftest

__all__ = [
    "ALGORITHM_ID",
    "BarthSliceError",
    "CERTIFICATE_VERSION",
    "Certificate",
    "DEFAULT_PRIME",
    "DimensionRecord",
    "DomainError",
    "FiberData",
    "GammaMatrix",
    "GramBlocks",
    "GroupElement",
    "HalfData",
    "InvariantError",
    "Matrix",
    "PencilReport",
    "Poly",
    "PrimeField",
    "RationalField",
    "SamplingError",
    "SeededRng",
    "SelftestResult",
    "ShapeError",
    "SliceData",
    "SliceResidual",
    "WitnessReport",
    "WitnessUnavailable",
    "__version__",
    "apply_group",
    "build_gamma",
    "canonical_fiber_solutions",
    "census_threshold",
    "certificate_ok",
    "compose_group",
    "dimension_formulas",
    "evaluate_alpha",
    "expected_kernel_dim",
    "family_check",
    "fiber_census",
    "fiber_from_vec",
    "fiber_system",
    "field_arithmetic",
    "gram_blocks",
    "half_from_vec",
    "inverse",
    "jacobian",
    "kernel_basis",
    "matvec",
    "monad_condition",
    "pencil_check",
    "point_rank_check",
    "poly_gcd",
    "random_group_element",
    "random_orthogonal",
    "random_sl2",
    "rank",
    "residual",
    "residual_cross",
    "rref",
    "run_selftest",
    "sample_element",
    "sample_half",
    "skew_index",
    "spans_match",
    "sym_index",
    "symplectic_form",
    "vec_fiber",
    "vec_half",
    "vec_skew",
    "vec_slice",
    "wedge",
    "witness_certificate",
    "witness_pipeline",
]
