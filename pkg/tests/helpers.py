"""Strategies and brute-force oracles shared by the test modules."""

import itertools
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from trace_pi.algebra import build_c2, build_ck_degenerate, build_dn, build_mn, build_ut2
from trace_pi.evaluate import Assignment, evaluate
from trace_pi.poly import TraceMonomial, TracePolynomial

small_ints = st.integers(min_value=-4, max_value=4)
rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def fixture_algebras():
    return [
        build_dn([1, 0]),
        build_dn([1, 1]),
        build_dn([1, 2]),
        build_dn([1, 2, 0]),
        build_c2(0, 1),
        build_c2(1, 1),
        build_ck_degenerate(3, 1),
        build_ut2(),
        build_mn(2),
    ]


def commutative_fixtures():
    return [A for A in fixture_algebras() if A.is_commutative()]


@st.composite
def multilinear_monomials(draw, n):
    """A random monomial of MT_n."""
    perm = draw(st.permutations(list(range(1, n + 1))))
    cuts = sorted(draw(st.sets(st.integers(1, n), max_size=n)))
    pieces, start = [], 0
    for c in cuts + [n]:
        if c > start:
            pieces.append(tuple(perm[start:c]))
            start = c
    outside_index = draw(st.integers(-1, len(pieces) - 1))
    if outside_index < 0:
        return TraceMonomial(tuple(pieces), ())
    outside = pieces.pop(outside_index)
    return TraceMonomial(tuple(pieces), outside)


@st.composite
def multilinear_polynomials(draw, n, max_terms=4):
    terms = draw(st.lists(st.tuples(multilinear_monomials(n), rationals), min_size=1, max_size=max_terms))
    return TracePolynomial(terms)


def random_element(draw, A):
    return A.element([draw(rationals) for _ in range(A.dim)])


def brute_force_matrix(A, monomials, n):
    """Dense evaluation matrix by direct element arithmetic."""
    rows = []
    for m in monomials:
        row = []
        for t in itertools.product(range(A.dim), repeat=n):
            value = evaluate(TracePolynomial.from_monomial(m), Assignment.basis_tuple(A, t))
            row.extend(value.coords)
        rows.append(row)
    return rows


def sympy_rank(rows):
    if not rows:
        return 0
    return sympy.Matrix(rows).rank()
