from fractions import Fraction

import sympy
from helpers import rationals
from hypothesis import given
from hypothesis import strategies as st

from trace_pi.linalg import EchelonBasis, left_nullspace, nullspace, primitive_integer_row, rank, rref_dense

matrices = st.integers(1, 7).flatmap(
    lambda ncols: st.lists(st.lists(st.one_of(st.just(Fraction(0)), rationals), min_size=ncols, max_size=ncols),
                           min_size=1, max_size=8)
)


def sparse(rows):
    return [{c: x for c, x in enumerate(r) if x} for r in rows]


@given(matrices)
def test_rank_matches_sympy(m):
    assert rank(sparse(m)) == sympy.Matrix(m).rank()


@given(matrices)
def test_left_nullspace(m):
    r, combos = left_nullspace(sparse(m))
    assert r + len(combos) == len(m)
    for combo in combos:
        assert combo
        for c in range(len(m[0])):
            assert sum(x * m[i][c] for i, x in combo.items()) == 0
    # combinations are independent: each introduces its own (latest) row index
    assert len({max(c) for c in combos}) == len(combos)


def test_dependent_rows_with_scaling():
    rows = [{0: Fraction(1, 2), 1: Fraction(1, 3)}, {0: 3, 1: 2}]
    r, combos = left_nullspace(rows)
    assert r == 1
    (c,) = combos
    assert c[0] * Fraction(1, 2) + c[1] * 3 == 0


@given(matrices)
def test_nullspace_and_rref(m):
    rows, pivots = rref_dense(m)
    want, want_pivots = sympy.Matrix(m).rref()
    assert pivots == list(want_pivots)
    assert [list(r) for r in rows] == [list(want.row(i)) for i in range(len(pivots))]
    null = nullspace(m)
    assert len(null) == len(m[0]) - len(pivots)
    for v in null:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


@given(st.dictionaries(st.integers(0, 9), rationals, max_size=6))
def test_primitive(row):
    p = primitive_integer_row(row)
    nonzero = {c for c, x in row.items() if x}
    assert set(p) == nonzero
    if p:
        ratios = {Fraction(p[c]) / row[c] for c in p}
        assert len(ratios) == 1 and ratios.pop() > 0
        from math import gcd
        g = 0
        for x in p.values():
            g = gcd(g, x)
        assert g == 1


@given(matrices, st.lists(rationals, min_size=8, max_size=8))
def test_echelon_basis(m, coeffs):
    E = EchelonBasis()
    grew = E.extend(sparse(m))
    assert grew == E.dim == sympy.Matrix(m).rank()
    combo = {}
    for c, row in zip(coeffs, m):
        for k, x in enumerate(row):
            combo[k] = combo.get(k, 0) + c * x
    assert combo in E
    assert not E.insert(combo)
    for row in E.basis():
        p = min(row)
        assert row[p] == 1
        for other in E.basis():
            if other is not row:
                assert min(other) == p or p not in other


def test_echelon_membership_negative():
    E = EchelonBasis()
    E.insert({0: 1, 1: 1})
    assert {0: 1} not in E
    assert {0: 2, 1: 2} in E
    assert E.reduce({0: 1}) == {1: -1}
