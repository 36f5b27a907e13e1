"""Exact computations with boundary-format tensors and Steiner bundles."""

from .bundle import (
    SteinerBundle,
    classify,
    column_normal_form,
    elementary_transform,
    gale,
    has_multiple_point,
    is_member,
    logarithmic,
    moduli_dimension,
    new_bundle,
    nondegenerate_by_minors,
    normal_crossing,
    schwarzenberger,
    sections_dim,
    segre_intersection,
    unstable_scheme,
    w_invariant,
)
from .errors import (
    DegenerateTensor,
    DomainError,
    EnumerationTooLarge,
    FieldMismatch,
    NonMemberHyperplane,
    NormalizationFailure,
    NotBoundaryFormat,
    NotNormalCrossing,
    ParseError,
    PositiveDimensional,
)
from .groebner import buchberger, affine_dimension, ideal_membership, minors_ideal
from .poly import Poly, Ring
from .scalars import GF, QQ, Mod
from .tensor import (
    BoundaryTensor,
    apply_group_element,
    hyperdet_certificate,
    iso_test,
    make_identity,
    multiplication_map,
    stabilizer_algebra,
    validate_format,
)
from .zerodim import projective_length, zero_dim_solve

__version__ = "0.1.0"
