"""Exact trace identities, trace codimensions and generator checks for
small finite-dimensional algebras with trace."""

__version__ = "0.1.0"

from .algebra import (
    AlgebraElement,
    TraceAlgebra,
    build_c2,
    build_ck_degenerate,
    build_dn,
    build_mn,
    build_ut2,
    is_degenerate,
    load_algebra,
    trace_of,
    trace_space,
    validate,
)
from .catalog import catalog
from .codim import (
    Subspace,
    codimension,
    contains_at_degree,
    evaluation_matrix,
    identity_basis,
    ideals_equal_at_degree,
    spanning_family,
    verify_spanning_family,
)
from .comb import bell, closed_form, count_trace_monomials, stirling2, stirling_identity_check
from .dsl import format_polynomial, parse_polynomial
from .errors import (
    AlgebraMismatchError,
    InvalidAlgebraError,
    MalformedInputError,
    ParseError,
    RowCapExceeded,
    TracePIError,
    UnsupportedOperationError,
)
from .evaluate import Assignment, evaluate, is_identity
from .poly import (
    TraceMonomial,
    TracePolynomial,
    canonicalize,
    enumerate_mt,
    mul,
    substitute,
    trace_of_word,
    variable,
    wrap_trace,
)
from .tideal import GeneratorSet, consequence_space, verify_generators, verify_transfer, wrap_generator
