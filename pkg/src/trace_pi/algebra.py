"""Finite-dimensional unital algebras with trace, given by structure constants."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AlgebraMismatchError, InvalidAlgebraError, MalformedInputError
from .linalg import nullspace
from .rational import fraction_to_json, to_fraction


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    kind: str | None = None  # "associativity" | "unit" | "trace" | "shape"
    witness: tuple[int, ...] | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


class TraceAlgebra:
    """Algebra with basis ``b_0..b_{d-1}``; ``mul[i][j][k]`` is the b_k
    coordinate of ``b_i * b_j``.

    ``unit`` and ``trace`` are coordinate vectors.  Construction validates
    associativity, the unit, and trace symmetry unless ``check=False``.
    Equality and hashing use the numeric data only, not labels or name.
    """

    def __init__(self, mul, unit, trace, labels=None, name: str = "", check: bool = True, family=None):
        self.mul = tuple(tuple(tuple(to_fraction(x) for x in row) for row in plane) for plane in mul)
        self.unit = tuple(to_fraction(x) for x in unit)
        self.trace = tuple(to_fraction(x) for x in trace)
        self.dim = len(self.unit)
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(self.dim))
        self.name = name or f"algebra(dim={self.dim})"
        # (builder kind, parameters) when built by one of the named builders
        self.family = family
        shape = _shape_problem(self)
        if shape:
            raise MalformedInputError(shape)
        # sparse products: table[i][j] = ((k, c), ...)
        self.table = tuple(
            tuple(tuple((k, c) for k, c in enumerate(self.mul[i][j]) if c) for j in range(self.dim))
            for i in range(self.dim)
        )
        self._key = (self.mul, self.unit, self.trace)
        self._hash = hash(self._key)
        if check:
            report = validate(self)
            if not report.ok:
                raise InvalidAlgebraError(f"{self.name}: {report.message}", report)

    def __eq__(self, other):
        if not isinstance(other, TraceAlgebra):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"TraceAlgebra({self.name!r}, dim={self.dim})"

    def __reduce__(self):
        return (_rebuild, (self.mul, self.unit, self.trace, self.labels, self.name, self.family))

    def basis(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, tuple(Fraction(int(j == i)) for j in range(self.dim)))

    def element(self, coords: Sequence) -> "AlgebraElement":
        return AlgebraElement(self, tuple(to_fraction(c) for c in coords))

    @property
    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, (Fraction(0),) * self.dim)

    def product_coords(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.table[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                s = xi * yj
                for k, c in row[j]:
                    out[k] += s * c
        return tuple(out)

    def trace_coords(self, x: Sequence[Fraction]) -> Fraction:
        return sum((t * c for t, c in zip(self.trace, x) if t and c), Fraction(0))

    def is_commutative(self) -> bool:
        """Symmetry of the given structure constants (presentation-level check)."""
        return all(
            self.mul[i][j] == self.mul[j][i] for i in range(self.dim) for j in range(i + 1, self.dim)
        )

    def with_trace(self, trace, name: str = "") -> "TraceAlgebra":
        return TraceAlgebra(self.mul, self.unit, trace, self.labels, name or self.name)


def _rebuild(mul, unit, trace, labels, name, family):
    return TraceAlgebra(mul, unit, trace, labels, name, check=False, family=family)


def _shape_problem(A: TraceAlgebra) -> str:
    d = A.dim
    if d < 1:
        return "dimension must be positive"
    if len(A.trace) != d:
        return "trace vector length differs from dimension"
    if len(A.labels) != d:
        return "label count differs from dimension"
    if len(A.mul) != d or any(len(p) != d or any(len(r) != d for r in p) for p in A.mul):
        return "structure constants must be a d x d x d array"
    return ""


@dataclass(frozen=True)
class AlgebraElement:
    algebra: TraceAlgebra
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise MalformedInputError("coordinate vector length differs from algebra dimension")

    def _same(self, other: "AlgebraElement"):
        if not isinstance(other, AlgebraElement):
            raise AlgebraMismatchError(f"not an algebra element: {other!r}")
        if other.algebra != self.algebra:
            raise AlgebraMismatchError("elements belong to different algebras")

    def __add__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return mul_elements(self, other)
        s = to_fraction(other)
        return AlgebraElement(self.algebra, tuple(s * a for a in self.coords))

    def __rmul__(self, other):
        s = to_fraction(other)
        return AlgebraElement(self.algebra, tuple(s * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        parts = [f"{c}*{lab}" for c, lab in zip(self.coords, self.algebra.labels) if c]
        return " + ".join(parts) if parts else "0"


def mul_elements(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    a._same(b)
    return AlgebraElement(a.algebra, a.algebra.product_coords(a.coords, b.coords))


def trace_of(a: AlgebraElement) -> Fraction:
    return a.algebra.trace_coords(a.coords)


def validate(A: TraceAlgebra) -> ValidationReport:
    """Associativity on all basis triples, two-sided unit, trace symmetry."""
    d = A.dim
    basis = [tuple(Fraction(int(j == i)) for j in range(d)) for i in range(d)]
    prods = [[A.mul[i][j] for j in range(d)] for i in range(d)]
    for i in range(d):
        for j in range(d):
            for k in range(d):
                left = A.product_coords(prods[i][j], basis[k])
                right = A.product_coords(basis[i], prods[j][k])
                if left != right:
                    return ValidationReport(
                        False, "associativity", (i, j, k),
                        f"(b{i} b{j}) b{k} != b{i} (b{j} b{k})",
                    )
    for i in range(d):
        if A.product_coords(A.unit, basis[i]) != basis[i] or A.product_coords(basis[i], A.unit) != basis[i]:
            return ValidationReport(False, "unit", (i,), f"unit does not act as identity on b{i}")
    for i in range(d):
        for j in range(i + 1, d):
            if A.trace_coords(prods[i][j]) != A.trace_coords(prods[j][i]):
                return ValidationReport(False, "trace", (i, j), f"tr(b{i} b{j}) != tr(b{j} b{i})")
    return ValidationReport(True)


def _fmt_params(values) -> str:
    return ",".join(str(v) for v in values)


def build_dn(alphas) -> TraceAlgebra:
    """Diagonal n x n matrices with trace e_ii -> alpha_i."""
    alphas = [to_fraction(a) for a in alphas]
    n = len(alphas)
    if n == 0:
        raise MalformedInputError("build_dn needs at least one trace value")
    mul = [[[Fraction(int(i == j == k)) for k in range(n)] for j in range(n)] for i in range(n)]
    return TraceAlgebra(
        mul,
        [1] * n,
        alphas,
        [f"e{i + 1}{i + 1}" for i in range(n)],
        f"D{n}[t={_fmt_params(alphas)}]",
        family=("dn", tuple(alphas)),
    )


def build_ck_degenerate(k: int, alpha) -> TraceAlgebra:
    """F[j]/(j^k) with basis 1, j, ..., j^(k-1) and trace alpha on the unit only."""
    if not isinstance(k, int) or k < 1:
        raise MalformedInputError("k must be an integer >= 1")
    alpha = to_fraction(alpha)
    mul = [[[Fraction(int(i + j == m)) for m in range(k)] for j in range(k)] for i in range(k)]
    labels = ["1"] + ["j" if i == 1 else f"j^{i}" for i in range(1, k)]
    trace = [alpha] + [0] * (k - 1)
    return TraceAlgebra(mul, [1] + [0] * (k - 1), trace, labels, f"C{k}[t={alpha},0]", family=("ck", (k, alpha)))


def build_c2(alpha, beta) -> TraceAlgebra:
    """Span{1, j}, j^2 = 0, with the trace a + b j -> alpha a + beta b."""
    alpha, beta = to_fraction(alpha), to_fraction(beta)
    base = build_ck_degenerate(2, alpha)
    return TraceAlgebra(base.mul, base.unit, [alpha, beta], base.labels, f"C2[t={alpha},{beta}]",
                        family=("c2", (alpha, beta)))


def _matrix_units(n: int):
    units = [(r, c) for r in range(n) for c in range(n)]
    index = {u: i for i, u in enumerate(units)}
    d = len(units)
    mul = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for i, (a, b) in enumerate(units):
        for j, (c, e) in enumerate(units):
            if b == c:
                mul[i][j][index[(a, e)]] = Fraction(1)
    return units, mul


def build_mn(n: int, alpha=1) -> TraceAlgebra:
    """Full n x n matrices, trace = alpha * usual trace."""
    if not isinstance(n, int) or n < 1:
        raise MalformedInputError("n must be an integer >= 1")
    alpha = to_fraction(alpha)
    units, mul = _matrix_units(n)
    unit = [int(a == b) for a, b in units]
    trace = [alpha if a == b else 0 for a, b in units]
    labels = [f"e{a + 1}{b + 1}" for a, b in units]
    return TraceAlgebra(mul, unit, trace, labels, f"M{n}[t={alpha}*tr]", family=("mn", (n, alpha)))


def build_ut2() -> TraceAlgebra:
    """Upper triangular 2 x 2 matrices (basis e11, e22, e12) with zero trace."""
    units = [(0, 0), (1, 1), (0, 1)]
    index = {u: i for i, u in enumerate(units)}
    mul = [[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)]
    for i, (a, b) in enumerate(units):
        for j, (c, e) in enumerate(units):
            if b == c:
                mul[i][j][index[(a, e)]] = Fraction(1)
    return TraceAlgebra(mul, [1, 1, 0], [0, 0, 0], ["e11", "e22", "e12"], "UT2[t=0]", family=("ut2", ()))


@dataclass(frozen=True)
class DegeneracyReport:
    degenerate: bool
    gram_rank: int
    witness: AlgebraElement | None = None

    def __bool__(self) -> bool:
        return self.degenerate


def gram_matrix(A: TraceAlgebra) -> list[list[Fraction]]:
    return [[A.trace_coords(A.mul[i][j]) for j in range(A.dim)] for i in range(A.dim)]


def is_degenerate(A: TraceAlgebra) -> DegeneracyReport:
    """Whether the form (a, b) -> tr(ab) has a nonzero radical.

    The witness is the first nullspace vector of the Gram matrix.
    """
    null = nullspace(gram_matrix(A))
    if not null:
        return DegeneracyReport(False, A.dim)
    return DegeneracyReport(True, A.dim - len(null), A.element(null[0]))


def trace_space(A: TraceAlgebra) -> list[tuple[Fraction, ...]]:
    """Basis of all linear functionals t with t(ab) = t(ba).

    Ignores the trace stored on ``A``.
    """
    rows = []
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            diff = [x - y for x, y in zip(A.mul[i][j], A.mul[j][i])]
            if any(diff):
                rows.append(diff)
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(A.dim)) for i in range(A.dim)]
    return [tuple(v) for v in nullspace(rows)]


def algebra_to_dict(A: TraceAlgebra) -> dict:
    return {
        "dim": A.dim,
        "unit": [fraction_to_json(x) for x in A.unit],
        "trace": [fraction_to_json(x) for x in A.trace],
        "mul": [[[fraction_to_json(x) for x in row] for row in plane] for plane in A.mul],
        "labels": list(A.labels),
        "name": A.name,
    }


def algebra_from_dict(data: dict, name: str = "") -> TraceAlgebra:
    """Build and validate an algebra from the JSON file schema."""
    try:
        dim = int(data["dim"])
        mul, unit, trace = data["mul"], data["unit"], data["trace"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInputError(f"algebra file is missing a field: {exc}") from exc
    if len(unit) != dim:
        raise MalformedInputError("unit length differs from dim")
    return TraceAlgebra(mul, unit, trace, data.get("labels"), data.get("name") or name or "file")


def load_algebra(path) -> TraceAlgebra:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedInputError(f"{path}: invalid JSON ({exc})") from exc
    return algebra_from_dict(data, name=str(path))


def save_algebra(A: TraceAlgebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(algebra_to_dict(A), fh, indent=2)
        fh.write("\n")
