"""Trace codimensions, identity subspaces of MT_n and ideal comparisons.

The evaluation matrix of A in degree n has one row per monomial of MT_n and
one column per (basis tuple, output coordinate).  Its rank is the trace
codimension and its left nullspace is MT_n intersected with the identities.

When the structure constants are symmetric, monomials that differ only by
reordering letters inside blocks or in the outside word evaluate
identically, so the commutative monomial basis (Bell(n+1) rows) gives the
same rank.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .algebra import TraceAlgebra
from .comb import closed_form, set_partitions
from .errors import MalformedInputError, RowCapExceeded, UnsupportedOperationError
from .evaluate import monomial_row
from .linalg import EchelonBasis, FractionFreeEliminator, left_nullspace
from .poly import COMMUTATIVE, GENERAL, TraceMonomial, TracePolynomial, as_polynomial, enumerate_mt, mt_dimension

AUTO = "auto"
DEFAULT_ROW_CAP = 50_000
ROW_CAP_ENV = "TRACE_PI_ROW_CAP"


def row_cap(override: int | None = None) -> int:
    if override is not None:
        cap = override
    else:
        raw = os.environ.get(ROW_CAP_ENV)
        if raw is None or raw == "":
            return DEFAULT_ROW_CAP
        try:
            cap = int(raw)
        except ValueError:
            raise MalformedInputError(f"{ROW_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise MalformedInputError("row cap must be positive")
    return cap


def resolve_mode(A: TraceAlgebra, mode: str) -> str:
    if mode == AUTO:
        return COMMUTATIVE if A.is_commutative() else GENERAL
    if mode == GENERAL:
        return GENERAL
    if mode == COMMUTATIVE:
        if not A.is_commutative():
            raise UnsupportedOperationError(
                f"commutative mode needs symmetric structure constants; {A.name} is not commutative"
            )
        return COMMUTATIVE
    raise MalformedInputError(f"unknown mode {mode!r}")


def _check_n(n) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MalformedInputError(f"degree must be an integer >= 1, got {n!r}")


def _check_cap(n: int, mode: str, cap: int | None) -> None:
    rows = mt_dimension(n, mode)
    limit = row_cap(cap)
    if rows > limit:
        raise RowCapExceeded(rows, limit)


def _rows_chunk(args) -> list[dict[int, Fraction]]:
    A, n, monomials = args
    return [monomial_row(A, m, n) for m in monomials]


def _assemble(A: TraceAlgebra, n: int, monomials: Sequence[TraceMonomial], workers: int) -> list[dict]:
    if workers <= 1 or len(monomials) < 256:
        return [monomial_row(A, m, n) for m in monomials]
    size = -(-len(monomials) // (workers * 4))
    chunks = [(A, n, monomials[i : i + size]) for i in range(0, len(monomials), size)]
    rows: list[dict] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_rows_chunk, chunks):
            rows.extend(part)
    return rows


@dataclass
class EvaluationMatrix:
    algebra: TraceAlgebra
    n: int
    mode: str
    monomials: tuple[TraceMonomial, ...]
    rows: list[dict[int, Fraction]]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.algebra.dim ** (self.n + 1)

    def column(self, key: int) -> tuple[tuple[int, ...], int]:
        """Decode a column key into (basis tuple, output coordinate)."""
        d, n = self.algebra.dim, self.n
        code, k = divmod(key, d)
        return tuple((code // d ** (n - 1 - i)) % d for i in range(n)), k

    def entry(self, r: int, basis_tuple: Sequence[int], k: int) -> Fraction:
        d, n = self.algebra.dim, self.n
        code = sum(t * d ** (n - 1 - i) for i, t in enumerate(basis_tuple))
        return Fraction(self.rows[r].get(code * d + k, 0))

    def nonzero_columns(self) -> list[int]:
        cols: set[int] = set()
        for row in self.rows:
            cols.update(row)
        return sorted(cols)

    def rank(self) -> int:
        elim = FractionFreeEliminator()
        for row in self.rows:
            elim.add(row)
        return elim.rank


def evaluation_matrix(
    A: TraceAlgebra, n: int, mode: str = AUTO, workers: int = 1, row_cap: int | None = None
) -> EvaluationMatrix:
    _check_n(n)
    mode = resolve_mode(A, mode)
    _check_cap(n, mode, row_cap)
    monomials = enumerate_mt(n, mode)
    return EvaluationMatrix(A, n, mode, monomials, _assemble(A, n, monomials, workers))


def codimension(A: TraceAlgebra, n: int, mode: str = AUTO, workers: int = 1, row_cap: int | None = None) -> int:
    """dim MT_n / (MT_n ∩ Id^tr(A)), computed as an exact rank.

    >>> from trace_pi.algebra import build_dn
    >>> codimension(build_dn([1, 0]), 3)
    8
    """
    return evaluation_matrix(A, n, mode, workers, row_cap).rank()


@lru_cache(maxsize=None)
def monomial_index(n: int, mode: str) -> dict[TraceMonomial, int]:
    return {m: i for i, m in enumerate(enumerate_mt(n, mode))}


class Subspace:
    """A subspace of MT_n (or of its commutative quotient) in reduced
    echelon form over the monomial order of ``enumerate_mt(n, mode)``."""

    def __init__(self, n: int, mode: str, vectors: Iterable[dict[int, Fraction]] = ()):
        _check_n(n)
        if mode not in (GENERAL, COMMUTATIVE):
            raise MalformedInputError(f"unknown mode {mode!r}")
        self.n = n
        self.mode = mode
        self._echelon = EchelonBasis()
        self._echelon.extend(vectors)

    @classmethod
    def spanned_by(cls, n: int, mode: str, polys: Iterable) -> "Subspace":
        space = cls(n, mode)
        for p in polys:
            space.add(p)
        return space

    @property
    def monomials(self) -> tuple[TraceMonomial, ...]:
        return enumerate_mt(self.n, self.mode)

    @property
    def ambient_dim(self) -> int:
        return mt_dimension(self.n, self.mode)

    @property
    def dim(self) -> int:
        return self._echelon.dim

    def __len__(self) -> int:
        return self.dim

    def vector(self, p) -> dict[int, Fraction]:
        """Coordinates of p; commutative spaces project p first."""
        p = as_polynomial(p)
        index = monomial_index(self.n, self.mode)
        out: dict[int, Fraction] = {}
        for m, c in p.terms.items():
            if self.mode == COMMUTATIVE:
                m = m.commutative_form()
            i = index.get(m)
            if i is None:
                raise MalformedInputError(f"{m} is not a monomial of MT_{self.n}")
            out[i] = out.get(i, 0) + c
        return {i: c for i, c in out.items() if c}

    def polynomial(self, vec: dict[int, Fraction]) -> TracePolynomial:
        ms = self.monomials
        return TracePolynomial((ms[i], c) for i, c in vec.items())

    def add(self, p) -> bool:
        return self._echelon.insert(self.vector(p))

    def add_vector(self, vec: dict[int, Fraction]) -> bool:
        return self._echelon.insert(vec)

    def vectors(self) -> list[dict[int, Fraction]]:
        return self._echelon.basis()

    def basis(self) -> list[TracePolynomial]:
        return [self.polynomial(v) for v in self.vectors()]

    def contains(self, p) -> bool:
        return self.contains_vector(self.vector(p))

    def contains_vector(self, vec) -> bool:
        return not self._echelon.reduce(vec)

    def __contains__(self, p) -> bool:
        return self.contains(p)

    def _comparable(self, other: "Subspace") -> None:
        if not isinstance(other, Subspace) or (self.n, self.mode) != (other.n, other.mode):
            raise MalformedInputError("subspaces live in different ambient spaces")

    def issubset(self, other: "Subspace") -> bool:
        self._comparable(other)
        return all(other.contains_vector(v) for v in self.vectors())

    def __le__(self, other: "Subspace") -> bool:
        return self.issubset(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.n, self.mode) == (other.n, other.mode) and self.vectors() == other.vectors()

    __hash__ = None

    def __repr__(self) -> str:
        return f"Subspace(n={self.n}, mode={self.mode}, dim={self.dim}/{self.ambient_dim})"

    def lift(self) -> "Subspace":
        """Preimage in general coordinates of a commutative subspace."""
        if self.mode == GENERAL:
            return self
        space = Subspace(self.n, GENERAL)
        space._echelon.extend(_commutator_kernel(self.n))
        gindex = monomial_index(self.n, GENERAL)
        reps = self.monomials
        for v in self.vectors():
            space.add_vector({gindex[reps[i]]: c for i, c in v.items()})
        return space


def _commutator_kernel(n: int) -> list[dict[int, Fraction]]:
    """m - rep(m) for every general monomial that is not its own class representative."""
    gindex = monomial_index(n, GENERAL)
    out = []
    for m, i in gindex.items():
        rep = m.commutative_form()
        if rep != m:
            out.append({gindex[rep]: Fraction(-1), i: Fraction(1)})
    return out


def identity_basis(
    A: TraceAlgebra, n: int, mode: str = GENERAL, workers: int = 1, row_cap: int | None = None
) -> Subspace:
    """MT_n ∩ Id^tr(A) as a reduced subspace.

    ``mode="commutative"`` returns the identities modulo commutators (only
    for commutative A); the general answer is its :meth:`Subspace.lift`.
    """
    _check_n(n)
    if mode not in (GENERAL, COMMUTATIVE):
        raise MalformedInputError(f"identity_basis mode must be general or commutative, got {mode!r}")
    eval_mode = resolve_mode(A, AUTO if mode == GENERAL else COMMUTATIVE)
    matrix = evaluation_matrix(A, n, eval_mode, workers, row_cap)
    _, null = left_nullspace(matrix.rows)
    space = Subspace(n, eval_mode, ({i: Fraction(c) for i, c in comb.items()} for comb in null))
    if mode == GENERAL:
        return space.lift()
    return space


@dataclass
class CodimReport:
    algebra: str
    n: int
    codim: int
    closed_form: int | None
    match: bool | None
    mode: str
    elapsed_ms: int | None

    def to_dict(self) -> dict:
        return asdict(self)


def closed_form_tag(A: TraceAlgebra) -> tuple[str, dict] | None:
    """The closed-form family an algebra built by a named builder belongs to."""
    if not A.family:
        return None
    kind, params = A.family
    if kind == "dn":
        alphas = list(params)
        nonzero = [a for a in alphas if a]
        if len(alphas) == 2:
            if len(nonzero) == 1:
                return "d2_a0", {}
            if len(nonzero) == 2:
                return ("d2_aa", {}) if alphas[0] == alphas[1] else ("d2_ab", {})
            return None
        if len(alphas) >= 3 and len(nonzero) == 1:
            return "dn_a00", {}
        if len(alphas) == 3 and len(nonzero) == 2:
            return ("d3_aa0", {}) if nonzero[0] == nonzero[1] else ("d3_ab0", {})
        return None
    if kind == "ck":
        k, alpha = params
        return ("ck_a0", {"k": k}) if alpha and k >= 2 else None
    if kind == "c2":
        alpha, beta = params
        if beta:
            return ("c2_a1", {}) if alpha else ("c2_01", {})
        return ("ck_a0", {"k": 2}) if alpha else None
    return None


def expected_codimension(A: TraceAlgebra, n: int) -> int | None:
    tag = closed_form_tag(A)
    if tag is None:
        return None
    value = closed_form(tag[0], n, **tag[1])
    return int(value) if value.denominator == 1 else None


def codim_report(A: TraceAlgebra, n: int, mode: str = AUTO, workers: int = 1,
                 row_cap: int | None = None, timing: bool = True) -> CodimReport:
    start = time.perf_counter()
    matrix = evaluation_matrix(A, n, mode, workers, row_cap)
    c = matrix.rank()
    elapsed = round((time.perf_counter() - start) * 1000) if timing else None
    expected = expected_codimension(A, n)
    return CodimReport(A.name, n, c, expected, None if expected is None else expected == c, matrix.mode, elapsed)


# Spanning families.  Each returns monomials of MT_n with increasing indices
# inside every block and in the outside word.

def _complement(n: int, used) -> tuple[int, ...]:
    used = set(used)
    return tuple(v for v in range(1, n + 1) if v not in used)


def _subsets(n: int):
    for k in range(n + 1):
        yield from combinations(range(1, n + 1), k)


def one_trace_family(n: int, max_size: int | None = None) -> list[TraceMonomial]:
    """Tr(x_I) x_J with I, J complementary; I empty means no trace."""
    out = []
    for inside in _subsets(n):
        if max_size is not None and len(inside) > max_size:
            continue
        blocks = (inside,) if inside else ()
        out.append(TraceMonomial(blocks, _complement(n, inside)))
    return sorted(out)


def two_trace_family(n: int) -> list[TraceMonomial]:
    """Tr(x_P) Tr(x_Q) x_R with P, Q nonempty and unordered."""
    out = set()
    for inside in _subsets(n):
        if len(inside) < 2:
            continue
        for part in set_partitions(inside):
            if len(part) == 2:
                out.add(TraceMonomial(tuple(part), _complement(n, inside)))
    return sorted(out)


def three_trace_family(n: int) -> list[TraceMonomial]:
    """Tr(x_s) Tr(x_U) Tr(x_V) x_T with U, V nonempty, duplicates removed."""
    out = set()
    for s in range(1, n + 1):
        rest = [v for v in range(1, n + 1) if v != s]
        for k in range(2, len(rest) + 1):
            for inside in combinations(rest, k):
                for part in set_partitions(inside):
                    if len(part) == 2:
                        blocks = ((s,),) + tuple(part)
                        out.add(TraceMonomial(blocks, _complement(n, (s,) + inside)))
    return sorted(out)


def c2_family(n: int) -> list[TraceMonomial]:
    """Tr(x_i1 x_i2) Tr(x_i3) ... Tr(x_ik) x_J, i1 < ... < ik; the degree-2
    trace may be absent."""
    out = set()
    for inside in _subsets(n):
        outside = _complement(n, inside)
        out.add(TraceMonomial(tuple((v,) for v in inside), outside))
        if len(inside) >= 2:
            blocks = (inside[:2],) + tuple((v,) for v in inside[2:])
            out.add(TraceMonomial(blocks, outside))
    return sorted(out)


def ck_family(n: int, k: int) -> list[TraceMonomial]:
    """Tr(x_I) x_J with |I| <= k - 1."""
    if k < 1:
        raise MalformedInputError("k must be >= 1")
    return one_trace_family(n, max_size=k - 1)


FAMILIES = ("one-trace", "two-trace", "three-trace", "c2", "ck")


def spanning_family(tag: str, n: int, k: int | None = None) -> list[TraceMonomial]:
    """Family by tag; tags may be joined with '+', e.g. ``one-trace+two-trace``."""
    _check_n(n)
    out: set[TraceMonomial] = set()
    for part in tag.split("+"):
        part = part.strip()
        if part == "one-trace":
            out.update(one_trace_family(n))
        elif part == "two-trace":
            out.update(two_trace_family(n))
        elif part == "three-trace":
            out.update(three_trace_family(n))
        elif part == "c2":
            out.update(c2_family(n))
        elif part == "ck":
            if k is None:
                raise MalformedInputError("the ck family needs k")
            out.update(ck_family(n, k))
        else:
            raise MalformedInputError(f"unknown family {part!r}; expected one of {', '.join(FAMILIES)}")
    return sorted(out)


@dataclass
class SpanningReport:
    size: int
    codim: int
    rank: int

    @property
    def ok(self) -> bool:
        return self.size == self.codim == self.rank

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"size": self.size, "codim": self.codim, "rank": self.rank, "ok": self.ok}


def verify_spanning_family(family: Sequence[TraceMonomial], A: TraceAlgebra, n: int,
                           workers: int = 1, row_cap: int | None = None) -> SpanningReport:
    """Whether ``family`` is a basis of MT_n modulo the identities of A."""
    _check_n(n)
    family = list(family)
    for m in family:
        if not isinstance(m, TraceMonomial) or m.degree != n or not m.is_multilinear() \
                or m.variables() != frozenset(range(1, n + 1)):
            raise MalformedInputError(f"{m} is not a monomial of MT_{n}")
    c = codimension(A, n, AUTO, workers, row_cap)
    elim = FractionFreeEliminator()
    for m in family:
        elim.add(monomial_row(A, m, n))
    return SpanningReport(len(family), c, elim.rank)


def _comparison_mode(A: TraceAlgebra, B: TraceAlgebra) -> str:
    return COMMUTATIVE if A.is_commutative() and B.is_commutative() else GENERAL


def ideals_equal_at_degree(A: TraceAlgebra, B: TraceAlgebra, n: int, row_cap: int | None = None) -> bool:
    """Whether MT_n ∩ Id^tr(A) = MT_n ∩ Id^tr(B).

    For two commutative algebras both spaces contain every commutator
    consequence, so the comparison is done modulo commutators.
    """
    mode = _comparison_mode(A, B)
    return identity_basis(A, n, mode, row_cap=row_cap) == identity_basis(B, n, mode, row_cap=row_cap)


def contains_at_degree(A: TraceAlgebra, B: TraceAlgebra, n: int, row_cap: int | None = None) -> bool:
    """Degree-n evidence for A in var^tr(B): Id^tr(B) ∩ MT_n ⊆ Id^tr(A) ∩ MT_n."""
    mode = _comparison_mode(A, B)
    return identity_basis(B, n, mode, row_cap=row_cap) <= identity_basis(A, n, mode, row_cap=row_cap)
