"""Initial and generic initial spaces of forms under revlex, over the rationals."""

from .errors import (
    ConsistencyError,
    DegreeError,
    DimensionError,
    GinSpaceError,
    InvalidChangeError,
    NonGenericSampleError,
    ParseError,
    PreconditionError,
    RandomnessError,
)
from .forms import (
    FormSpace,
    GradedIdealSlice,
    build_colon_ideal,
    colon_form,
    colon_monomial,
    ideal_piece,
    initial_space,
    restrict,
)
from .gin import GinResult, generify, gin, random_change
from .linalg import ExactMatrix, intersect, membership, rref
from .poly import (
    LinearChange,
    Monomial,
    Polynomial,
    exact_divide,
    expand_t_coefficients,
    revlex_compare,
    substitute_linear,
)
from .stable import (
    MonomialIdeal,
    MonomialSpace,
    borel_closure,
    build_J,
    codimension,
    green_predicate,
    has_generator_in_degree,
    hilbert_function,
    is_strongly_stable,
    minimal_generators,
)

__version__ = "0.1.0"
