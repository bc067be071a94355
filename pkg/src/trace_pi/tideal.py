"""Multilinear consequences of generator sets and generator-theorem checks.

Degree by degree, the span S_d of consequences is closed under

(a) substitution instances f(m_1, ..., m_k) of each generator, the m_i
    being multilinear trace monomials on disjoint variable sets that cover
    x_1..x_d;
(b) x_j p and p x_j for p in S_{d-1}, with p relabeled to avoid x_j;
(c) Tr(p x_j) for the same p, and Tr(v) for every v in S_d whose terms all
    have a nonempty outside word, repeated until nothing new appears.

Tr(1) is not modelled, so substitutions that would need it are skipped.
When the commutator [x1, x2] is among the generators every S_d contains all
commutator consequences, and the engine works modulo commutators on the
Bell(d+1) commutative monomials instead of all (d+1)! monomials.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import TraceAlgebra, build_dn
from .catalog import f1 as commutator
from .codim import Subspace, identity_basis, monomial_index
from .comb import set_partitions
from .errors import MalformedInputError, UnsupportedOperationError
from .evaluate import is_identity
from .linalg import EchelonBasis
from .poly import (
    COMMUTATIVE,
    GENERAL,
    TraceMonomial,
    TracePolynomial,
    as_polynomial,
    enumerate_mt,
    mt_dimension,
    substitute,
    variable,
    wrap_trace,
)
from .rational import to_fraction

AUTO = "auto"


def _is_commutator(g: TracePolynomial) -> bool:
    if len(g) != 2:
        return False
    c = next(iter(g.terms.values()))
    return g.scale(1 / c) in (commutator(), -commutator())


@dataclass(frozen=True)
class GeneratorSet:
    """Multilinear generators, each in exactly the variables x_1..x_k."""

    generators: tuple[TracePolynomial, ...]
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        gens = tuple(as_polynomial(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise MalformedInputError("a generator set needs at least one polynomial")
        for g in gens:
            if not g:
                raise MalformedInputError("the zero polynomial is not a generator")
            k = len(g.variables())
            if g.variables() != frozenset(range(1, k + 1)) or not g.is_multilinear(range(1, k + 1)):
                raise MalformedInputError(f"generator {g} is not multilinear in x1..x{k}")
        if self.names and len(self.names) != len(gens):
            raise MalformedInputError("one name per generator")

    @classmethod
    def of(cls, *polys, names: Sequence[str] = ()) -> "GeneratorSet":
        return cls(tuple(polys), tuple(names))

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree() for g in self.generators)

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    def has_commutator(self) -> bool:
        return any(_is_commutator(g) for g in self.generators)

    def label(self) -> str:
        if self.names:
            return ",".join(self.names)
        return "; ".join(str(g) for g in self.generators)


def _resolve_mode(G: GeneratorSet, mode: str) -> str:
    if mode == AUTO:
        return COMMUTATIVE if G.has_commutator() else GENERAL
    if mode == COMMUTATIVE and not G.has_commutator():
        raise MalformedInputError("commutative mode needs [x1, x2] among the generators")
    if mode not in (GENERAL, COMMUTATIVE):
        raise MalformedInputError(f"unknown mode {mode!r}")
    return mode


@lru_cache(maxsize=None)
def _layout(d: int, mode: str):
    """Internal column order for degree d: pure monomials first.

    With this order the echelon rows whose pivot is past the pure block span
    exactly the part of S_d with no pure terms.
    """
    monos = enumerate_mt(d, mode)
    ordered = [m for m in monos if m.is_pure] + [m for m in monos if not m.is_pure]
    index = {m: i for i, m in enumerate(ordered)}
    npure = sum(1 for m in monos if m.is_pure)
    return tuple(ordered), index, npure


@lru_cache(maxsize=None)
def _images(block: tuple[int, ...], mode: str) -> tuple[TraceMonomial, ...]:
    mapping = {i + 1: v for i, v in enumerate(block)}
    return tuple(m.relabel(mapping) for m in enumerate_mt(len(block), mode))


def _ordered_partitions(d: int, k: int):
    """Assignments of {1..d} to k labeled nonempty blocks."""
    for part in set_partitions(range(1, d + 1)):
        if len(part) == k:
            yield from itertools.permutations(part)


class ClosureEngine:
    """Builds the consequence spans S_1, S_2, ... of a generator set."""

    def __init__(self, G: GeneratorSet, mode: str = AUTO):
        self.G = G
        self.mode = _resolve_mode(G, mode)
        self.spaces: dict[int, EchelonBasis] = {}

    def _vector(self, p: TracePolynomial, d: int) -> dict[int, Fraction]:
        _, index, _ = _layout(d, self.mode)
        out: dict[int, Fraction] = {}
        for m, c in p.terms.items():
            if self.mode == COMMUTATIVE:
                m = m.commutative_form()
            i = index[m]
            out[i] = out.get(i, 0) + c
        return {i: c for i, c in out.items() if c}

    def _polynomial(self, vec: dict[int, Fraction], d: int) -> TracePolynomial:
        ordered, _, _ = _layout(d, self.mode)
        return TracePolynomial((ordered[i], c) for i, c in vec.items())

    def _substitution_candidates(self, d: int):
        for f in self.G:
            k = f.degree()
            if k > d:
                continue
            for blocks in _ordered_partitions(d, k):
                for choice in itertools.product(*(_images(b, self.mode) for b in blocks)):
                    try:
                        yield substitute(f, {i + 1: m for i, m in enumerate(choice)})
                    except UnsupportedOperationError:
                        continue

    def _lift_candidates(self, d: int):
        lower = self.spaces.get(d - 1)
        if lower is None:
            return
        polys = [self._polynomial(v, d - 1) for v in lower.basis()]
        for j in range(1, d + 1):
            mapping = {i: (i if i < j else i + 1) for i in range(1, d)}
            xj = variable(j)
            for p in polys:
                q = p.relabel(mapping)
                yield xj * q
                if self.mode == GENERAL:
                    yield q * xj
                yield wrap_trace(q * xj)

    def _wrap_nonpure(self, d: int) -> int:
        S = self.spaces[d]
        _, _, npure = _layout(d, self.mode)
        grown = 0
        for pivot in sorted(S.rows):
            if pivot < npure:
                continue
            row = S.rows.get(pivot)
            if row is None:
                continue
            p = self._polynomial(row, d)
            grown += S.insert(self._vector(wrap_trace(p), d))
        return grown

    def sweep(self, d: int, first: bool = False) -> int:
        """One closure pass in degree d; returns how much the span grew."""
        S = self.spaces.setdefault(d, EchelonBasis())
        grown = 0
        if first:
            for q in itertools.chain(self._substitution_candidates(d), self._lift_candidates(d)):
                grown += S.insert(self._vector(q, d))
        grown += self._wrap_nonpure(d)
        return grown

    def build(self, n: int) -> None:
        for d in range(1, n + 1):
            if d in self.spaces:
                continue
            self.sweep(d, first=True)
            while self.sweep(d):
                pass

    def subspace(self, d: int) -> Subspace:
        """S_d re-reduced in the canonical monomial order."""
        self.build(d)
        ordered, _, _ = _layout(d, self.mode)
        canon = monomial_index(d, self.mode)
        return Subspace(
            d, self.mode, ({canon[ordered[i]]: c for i, c in row.items()} for row in self.spaces[d].basis())
        )


def consequence_space(G, n: int, mode: str = AUTO) -> Subspace:
    """Degree-n multilinear consequences of G as a subspace of MT_n.

    With the commutator in G the closure runs modulo commutators and the
    result is lifted back; pass ``mode="commutative"`` to keep the quotient
    coordinates.
    """
    if not isinstance(G, GeneratorSet):
        G = GeneratorSet(tuple(G))
    if not isinstance(n, int) or n < 1:
        raise MalformedInputError("degree must be an integer >= 1")
    if n < G.max_degree:
        raise MalformedInputError(f"degree {n} is below the largest generator degree {G.max_degree}")
    space = ClosureEngine(G, mode).subspace(n)
    return space.lift() if mode == AUTO else space


def wrap_generator(f) -> TracePolynomial:
    """Tr(f(x_1, ..., x_k) x_{k+1})."""
    f = as_polynomial(f)
    k = len(f.variables())
    if f.variables() != frozenset(range(1, k + 1)) or not f.is_multilinear(range(1, k + 1)):
        raise MalformedInputError("wrap_generator needs a polynomial multilinear in x1..xk")
    return wrap_trace(f * variable(k + 1))


@dataclass
class DegreeRow:
    n: int
    dim_consequences: int
    dim_identities: int
    sound: bool
    complete: bool

    @property
    def ok(self) -> bool:
        return self.sound and self.complete


@dataclass
class VerifyReport:
    algebra: str
    generators: str
    max_n: int
    mode: str
    rows: list[DegreeRow]
    unsound_witness: str | None = None

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def first_failure(self) -> int | None:
        return next((r.n for r in self.rows if not r.ok), None)

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "generators": self.generators,
            "max_n": self.max_n,
            "mode": self.mode,
            "ok": self.ok,
            "first_failure": self.first_failure,
            "unsound_witness": self.unsound_witness,
            "degrees": [
                {
                    "n": r.n,
                    "dim_consequences": r.dim_consequences,
                    "dim_identities": r.dim_identities,
                    "sound": r.sound,
                    "complete": r.complete,
                }
                for r in self.rows
            ],
        }


def verify_generators(G, A: TraceAlgebra, max_n: int, mode: str = AUTO) -> VerifyReport:
    """Degree-by-degree check that G generates the trace identities of A.

    Dimensions are reported inside MT_n even when the work is done modulo
    commutators.
    """
    if not isinstance(G, GeneratorSet):
        G = GeneratorSet(tuple(G))
    if not isinstance(max_n, int) or max_n < G.max_degree:
        raise MalformedInputError(f"max_n must be at least the largest generator degree {G.max_degree}")
    if mode == AUTO:
        mode = COMMUTATIVE if G.has_commutator() and A.is_commutative() else GENERAL
    engine = ClosureEngine(G, mode)
    rows = []
    witness = None
    for n in range(1, max_n + 1):
        S = engine.subspace(n)
        ids = identity_basis(A, n, mode)
        sound = True
        for p in S.basis():
            if not is_identity(p, A):
                sound = False
                if witness is None:
                    witness = str(p)
                break
        offset = mt_dimension(n, GENERAL) - mt_dimension(n, mode)
        rows.append(DegreeRow(n, S.dim + offset, ids.dim + offset, sound, sound and S.dim == ids.dim))
    return VerifyReport(A.name, G.label(), max_n, mode, rows, witness)


def verify_transfer(G, alphas: Iterable, max_n: int, mode: str = AUTO) -> VerifyReport:
    """Lift generators of D_n^{t_alphas} to D_{n+1}^{t_{alphas,0}} and verify.

    The lifted set is {Tr(f x_{k+1}) : f in G, f not the commutator} plus the
    commutator.
    """
    if not isinstance(G, GeneratorSet):
        G = GeneratorSet(tuple(G))
    alphas = [to_fraction(a) for a in alphas]
    if not alphas or any(a == 0 for a in alphas):
        raise MalformedInputError("transfer needs nonzero trace values alpha_1..alpha_n")
    if not G.has_commutator():
        raise MalformedInputError("transfer needs [x1, x2] among the generators")
    lifted = [commutator()]
    names = ["f1"]
    for i, g in enumerate(G.generators):
        if _is_commutator(g):
            continue
        lifted.append(wrap_generator(g))
        names.append(f"Tr({G.names[i]}*x)" if G.names else f"Tr(g{i + 1}*x)")
    A = build_dn(alphas + [Fraction(0)])
    return verify_generators(GeneratorSet(tuple(lifted), tuple(names)), A, max_n, mode)
