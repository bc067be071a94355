"""Evaluating trace polynomials in an algebra and testing identities."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import AlgebraElement, TraceAlgebra, mul_elements, trace_of
from .errors import AlgebraMismatchError, MalformedInputError
from .poly import TraceMonomial, as_polynomial


@dataclass(frozen=True)
class Assignment:
    """Values for the variables x_i, all in one algebra."""

    algebra: TraceAlgebra
    values: Mapping[int, AlgebraElement]

    def __post_init__(self):
        for i, v in self.values.items():
            if not isinstance(v, AlgebraElement):
                raise AlgebraMismatchError(f"x{i} is not an algebra element")
            if v.algebra != self.algebra:
                raise AlgebraMismatchError(f"x{i} lies in a different algebra")

    @classmethod
    def of(cls, algebra: TraceAlgebra, values) -> "Assignment":
        """From a mapping ``{i: element}`` or a sequence for x1, x2, ..."""
        if not isinstance(values, Mapping):
            values = {i + 1: v for i, v in enumerate(values)}
        return cls(algebra, dict(values))

    @classmethod
    def basis_tuple(cls, algebra: TraceAlgebra, indices: Sequence[int]) -> "Assignment":
        return cls(algebra, {i + 1: algebra.basis(j) for i, j in enumerate(indices)})


def _word_value(A: TraceAlgebra, word, values) -> AlgebraElement:
    out = A.one
    for v in word:
        out = mul_elements(out, values[v])
    return out


def evaluate(p, a: Assignment) -> AlgebraElement:
    """Value of ``p`` with x_i -> a.values[i] and Tr -> the algebra trace.

    Scalars are embedded through the unit.
    """
    p = as_polynomial(p)
    A = a.algebra
    missing = sorted(p.variables() - set(a.values))
    if missing:
        raise MalformedInputError(f"assignment is missing x{missing[0]}")
    total = A.zero()
    for m, c in p.sorted_terms():
        scalar = Fraction(c)
        for b in m.blocks:
            scalar *= trace_of(_word_value(A, b, a.values))
            if not scalar:
                break
        if scalar:
            total = total + _word_value(A, m.outside, a.values) * scalar
    return total


# Sparse evaluation on basis tuples.  products(A, L) maps every index tuple
# of length L with nonzero product to that product's sparse coordinates.

_PRODUCTS: dict = {}
_TRACES: dict = {}


def products(A: TraceAlgebra, length: int) -> dict[tuple[int, ...], tuple[tuple[int, Fraction], ...]]:
    key = (A, length)
    hit = _PRODUCTS.get(key)
    if hit is not None:
        return hit
    if length == 0:
        table = {(): tuple((k, c) for k, c in enumerate(A.unit) if c)}
    else:
        prev = products(A, length - 1)
        table = {}
        for idx, coords in prev.items():
            for j in range(A.dim):
                acc: dict[int, Fraction] = {}
                for i, x in coords:
                    for k, c in A.table[i][j]:
                        acc[k] = acc.get(k, 0) + x * c
                nz = tuple((k, v) for k, v in sorted(acc.items()) if v)
                if nz:
                    table[idx + (j,)] = nz
    _PRODUCTS[key] = table
    return table


def traces(A: TraceAlgebra, length: int) -> dict[tuple[int, ...], Fraction]:
    """tr(b_{i1} ... b_{iL}) for every index tuple where it is nonzero."""
    key = (A, length)
    hit = _TRACES.get(key)
    if hit is not None:
        return hit
    table = {}
    for idx, coords in products(A, length).items():
        t = sum((A.trace[k] * c for k, c in coords), Fraction(0))
        if t:
            table[idx] = t
    _TRACES[key] = table
    return table


def clear_caches() -> None:
    _PRODUCTS.clear()
    _TRACES.clear()


def monomial_row(A: TraceAlgebra, m: TraceMonomial, n: int) -> dict[int, Fraction]:
    """Sparse evaluations of ``m`` on all basis tuples of length n.

    The key of tuple t and output coordinate k is ``code(t) * d + k`` where
    ``code(t) = sum t_i d^(n-i)``, so keys follow lexicographic tuple order.
    """
    d = A.dim
    weight = {v: d ** (n - v) for v in range(1, n + 1)}
    partials: list[list[tuple[int, Fraction]]] = []
    for b in m.blocks:
        entries = [
            (sum(weight[v] * i for v, i in zip(b, idx)), t)
            for idx, t in traces(A, len(b)).items()
        ]
        if not entries:
            return {}
        partials.append(entries)
    outside = [
        (sum(weight[v] * i for v, i in zip(m.outside, idx)), coords)
        for idx, coords in products(A, len(m.outside)).items()
    ]
    # free variables (not in m) cannot occur in multilinear MT_n monomials
    scalars: list[tuple[int, Fraction]] = [(0, Fraction(1))]
    for entries in partials:
        scalars = [(c1 + c2, s1 * s2) for c1, s1 in scalars for c2, s2 in entries]
    row: dict[int, Fraction] = {}
    for c1, s in scalars:
        for c2, coords in outside:
            base = (c1 + c2) * d
            for k, x in coords:
                row[base + k] = s * x
    return row


@dataclass(frozen=True)
class IdentityResult:
    identity: bool
    witness: tuple[int, ...] | None = None
    value: AlgebraElement | None = None
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return self.identity


def is_identity(p, A: TraceAlgebra) -> IdentityResult:
    """Check ``p`` on every tuple of basis elements.

    By multilinearity this decides whether ``p`` is a trace identity of A.
    On failure the witness is the lexicographically first failing tuple of
    basis indices (0-based) and ``value`` its evaluation.
    """
    p = as_polynomial(p)
    variables = sorted(p.variables())
    n = len(variables)
    if not p.is_multilinear(range(1, n + 1)):
        raise MalformedInputError("is_identity needs a polynomial multilinear in x1..xn")
    if n == 0:
        value = evaluate(p, Assignment(A, {}))
        return IdentityResult(value.is_zero(), None if value.is_zero() else (), value)
    d = A.dim
    total: dict[int, Fraction] = {}
    for m, c in p.terms.items():
        for key, x in monomial_row(A, m, n).items():
            total[key] = total.get(key, 0) + c * x
    failing = [k for k, v in total.items() if v]
    if not failing:
        return IdentityResult(True)
    code = min(failing) // d
    witness = tuple((code // d ** (n - 1 - i)) % d for i in range(n))
    value = evaluate(p, Assignment.basis_tuple(A, witness))
    labels = tuple(A.labels[i] for i in witness)
    return IdentityResult(False, witness, value, labels)


def all_basis_tuples(A: TraceAlgebra, n: int):
    return itertools.product(range(A.dim), repeat=n)
