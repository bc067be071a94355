import itertools
from fractions import Fraction

import pytest
from helpers import fixture_algebras, multilinear_monomials, multilinear_polynomials, random_element
from hypothesis import given, settings
from hypothesis import strategies as st

from trace_pi.algebra import build_c2, build_dn, build_mn, trace_of
from trace_pi.catalog import catalog
from trace_pi.errors import AlgebraMismatchError, MalformedInputError
from trace_pi.evaluate import Assignment, evaluate, is_identity, monomial_row
from trace_pi.poly import TraceMonomial, TracePolynomial, trace_of_word, variable, wrap_trace

ALGEBRAS = fixture_algebras()


def direct_value(m, values):
    # straight from the definition, no tables
    A = values[0].algebra
    scalar = Fraction(1)
    for block in m.blocks:
        w = A.one
        for v in block:
            w = w * values[v - 1]
        scalar *= trace_of(w)
    out = A.one
    for v in m.outside:
        out = out * values[v - 1]
    return out * scalar


@pytest.mark.parametrize("A", ALGEBRAS, ids=lambda A: A.name)
@given(data=st.data(), m=multilinear_monomials(3))
def test_evaluate_matches_definition(A, data, m):
    values = [random_element(data.draw, A) for _ in range(3)]
    assert evaluate(TracePolynomial.from_monomial(m), Assignment.of(A, values)) == direct_value(m, values)


@settings(max_examples=200)
@given(data=st.data(), p=multilinear_polynomials(3), slot=st.integers(1, 3), c=st.fractions(max_denominator=5))
def test_multilinearity(data, p, slot, c):
    A = data.draw(st.sampled_from(ALGEBRAS))
    values = [random_element(data.draw, A) for _ in range(3)]
    extra = random_element(data.draw, A)
    base = evaluate(p, Assignment.of(A, values))
    other = list(values)
    other[slot - 1] = extra
    mixed = list(values)
    mixed[slot - 1] = values[slot - 1] * c + extra
    assert evaluate(p, Assignment.of(A, mixed)) == base * c + evaluate(p, Assignment.of(A, other))


@pytest.mark.parametrize("A", ALGEBRAS, ids=lambda A: A.name)
def test_monomial_row_against_definition(A):
    n = 3
    from trace_pi.poly import enumerate_mt

    for m in enumerate_mt(n)[::3]:
        row = monomial_row(A, m, n)
        for t in itertools.product(range(A.dim), repeat=n):
            value = direct_value(m, [A.basis(j) for j in t])
            code = sum(j * A.dim ** (n - 1 - i) for i, j in enumerate(t))
            for k in range(A.dim):
                assert row.get(code * A.dim + k, 0) == value.coords[k]


def test_scalars_through_unit():
    A = build_dn([1, 2])
    assert evaluate(trace_of_word(1), Assignment.of(A, [A.one])) == A.one * 3
    assert evaluate(TracePolynomial.from_monomial(TraceMonomial()).scale(5), Assignment(A, {})) == A.one * 5


def test_errors():
    A = build_dn([1, 2])
    with pytest.raises(MalformedInputError):
        evaluate(variable(1) * variable(2), Assignment.of(A, [A.one]))
    with pytest.raises(AlgebraMismatchError):
        Assignment.of(A, [build_dn([1, 1]).one])
    with pytest.raises(MalformedInputError):
        is_identity(variable(1) * variable(1), A)
    with pytest.raises(MalformedInputError):
        is_identity(variable(2), A)


def test_commutator_witness():
    r = is_identity(catalog("f1"), build_mn(2))
    assert not r
    # first failing pair in lexicographic order of basis indices e11,e12,e21,e22
    assert r.witness == (0, 1)
    assert r.labels == ("e11", "e12")
    assert not r.value.is_zero()


def test_witness_is_lexicographically_first():
    A = build_dn([1, 2, 0])
    p = catalog("f2", [1])
    r = is_identity(p, A)
    assert not r
    for t in itertools.product(range(A.dim), repeat=2):
        v = evaluate(p, Assignment.basis_tuple(A, t))
        if not v.is_zero():
            assert t == r.witness
            break


@pytest.mark.parametrize("alphas", [(1, 1), (1, 2), (2, -1), (1, 3)])
def test_wrapped_identity_transfers(alphas):
    # an identity f of D2 with trace (a, b) wraps to Tr(f x_{n+1}), an identity of D3 with trace (a, b, 0)
    a, b = alphas
    D2, D3 = build_dn([a, b]), build_dn([a, b, 0])
    for f in (catalog("f1"), catalog("f4", [a, b]), catalog("f5", [a, b])):
        assert is_identity(f, D2)
        assert is_identity(wrap_trace(f * variable(len(f.variables()) + 1)), D3)
    if a == b:
        assert is_identity(catalog("f3", [a]), D2)
        assert is_identity(wrap_trace(catalog("f3", [a]) * variable(3)), D3)


def test_c2_example():
    assert is_identity(catalog("h4", [1]), build_c2(1, 1))
    assert is_identity(catalog("h5", [1]), build_c2(1, 1))
