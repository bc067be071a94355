"""Trace monomials and trace polynomials in the free algebra with trace.

A monomial is a product of central trace factors ``Tr(w)`` and an ordered
word of free variables.  Variables are 1-based integers, so ``x3`` is ``3``.
Every monomial is stored in canonical form: each trace block is rotated to
its lexicographically least rotation and the blocks are sorted by
``(length, word)``.  Two monomials are equal exactly when their canonical
forms coincide, which makes polynomial equality a dictionary comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import MalformedInputError, UnsupportedOperationError

Word = tuple[int, ...]

GENERAL = "general"
COMMUTATIVE = "commutative"
MODES = (GENERAL, COMMUTATIVE)


def least_rotation(word: Word) -> Word:
    """Lexicographically least cyclic rotation.

    >>> least_rotation((2, 3, 1))
    (1, 2, 3)
    >>> least_rotation((2, 1, 2, 1))
    (1, 2, 1, 2)
    """
    if len(word) <= 1:
        return tuple(word)
    return min(tuple(word[i:]) + tuple(word[:i]) for i in range(len(word)))


def _block_key(block: Word):
    return (len(block), block)


def _check_word(word, what: str) -> Word:
    word = tuple(word)
    for letter in word:
        if not isinstance(letter, int) or isinstance(letter, bool) or letter < 1:
            raise MalformedInputError(f"{what} contains invalid variable index {letter!r}")
    return word


@dataclass(frozen=True)
class TraceMonomial:
    """``Tr(b_1) ... Tr(b_r) * w`` in canonical form.

    The constructor canonicalizes its input, so ``TraceMonomial(((2, 1),))``
    and ``TraceMonomial(((1, 2),))`` are the same monomial.
    """

    blocks: tuple[Word, ...] = ()
    outside: Word = ()

    def __post_init__(self):
        blocks = []
        for block in self.blocks:
            block = _check_word(block, "trace block")
            if not block:
                raise MalformedInputError("empty trace block")
            blocks.append(least_rotation(block))
        blocks.sort(key=_block_key)
        object.__setattr__(self, "blocks", tuple(blocks))
        object.__setattr__(self, "outside", _check_word(self.outside, "outside word"))

    @property
    def degree(self) -> int:
        return sum(map(len, self.blocks)) + len(self.outside)

    def letters(self) -> list[int]:
        out = [v for b in self.blocks for v in b]
        out.extend(self.outside)
        return out

    def variables(self) -> frozenset[int]:
        return frozenset(self.letters())

    def is_multilinear(self) -> bool:
        letters = self.letters()
        return len(letters) == len(set(letters))

    @property
    def is_pure(self) -> bool:
        """True when no variable sits outside a trace."""
        return not self.outside

    def sort_key(self):
        return (
            self.degree,
            len(self.blocks),
            tuple(_block_key(b) for b in self.blocks),
            self.outside,
        )

    def __lt__(self, other: "TraceMonomial") -> bool:
        return self.sort_key() < other.sort_key()

    def relabel(self, mapping: Mapping[int, int]) -> "TraceMonomial":
        return TraceMonomial(
            tuple(tuple(mapping[v] for v in b) for b in self.blocks),
            tuple(mapping[v] for v in self.outside),
        )

    def commutative_form(self) -> "TraceMonomial":
        """Representative of the class under full commutativity."""
        return TraceMonomial(
            tuple(tuple(sorted(b)) for b in self.blocks), tuple(sorted(self.outside))
        )

    def __mul__(self, other: "TraceMonomial") -> "TraceMonomial":
        if not isinstance(other, TraceMonomial):
            return NotImplemented
        return TraceMonomial(self.blocks + other.blocks, self.outside + other.outside)

    def __str__(self) -> str:
        return format_monomial(self)


UNIT = TraceMonomial()


def canonicalize(blocks: Iterable[Iterable[int]] = (), outside: Iterable[int] = ()) -> TraceMonomial:
    """Canonical monomial from raw block and word data."""
    return TraceMonomial(tuple(tuple(b) for b in blocks), tuple(outside))


def format_monomial(m: TraceMonomial) -> str:
    parts = ["Tr(" + "*".join(f"x{v}" for v in b) + ")" for b in m.blocks]
    parts.extend(f"x{v}" for v in m.outside)
    return "*".join(parts)


def _coerce_coefficient(c) -> Fraction:
    from .rational import to_fraction

    return to_fraction(c)


class TracePolynomial:
    """Finite linear combination of canonical trace monomials over Q.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        acc: dict[TraceMonomial, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for mono, coeff in items:
                if not isinstance(mono, TraceMonomial):
                    raise MalformedInputError(f"not a TraceMonomial: {mono!r}")
                acc[mono] = acc.get(mono, 0) + _coerce_coefficient(coeff)
        self._terms = MappingProxyType({m: c for m, c in acc.items() if c != 0})
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: dict) -> "TracePolynomial":
        obj = cls.__new__(cls)
        obj._terms = MappingProxyType(terms)
        obj._hash = None
        return obj

    @classmethod
    def from_monomial(cls, m: TraceMonomial, coeff=1) -> "TracePolynomial":
        return cls({m: coeff})

    @property
    def terms(self) -> Mapping[TraceMonomial, Fraction]:
        return self._terms

    def sorted_terms(self) -> list[tuple[TraceMonomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, TracePolynomial):
            return dict(self._terms) == dict(other._terms)
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        from .dsl import format_polynomial

        return f"TracePolynomial({format_polynomial(self)!r})"

    def __str__(self) -> str:
        from .dsl import format_polynomial

        return format_polynomial(self)

    def _combine(self, other: "TracePolynomial", sign: int) -> "TracePolynomial":
        acc = dict(self._terms)
        for m, c in other._terms.items():
            v = acc.get(m, 0) + sign * c
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        return TracePolynomial._from_clean(acc)

    def __add__(self, other):
        if not isinstance(other, TracePolynomial):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other):
        if not isinstance(other, TracePolynomial):
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self):
        return TracePolynomial._from_clean({m: -c for m, c in self._terms.items()})

    def scale(self, scalar) -> "TracePolynomial":
        s = _coerce_coefficient(scalar)
        if s == 0:
            return TracePolynomial()
        return TracePolynomial._from_clean({m: s * c for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, TracePolynomial):
            return mul(self, other)
        if isinstance(other, TraceMonomial):
            return mul(self, TracePolynomial.from_monomial(other))
        try:
            return self.scale(other)
        except MalformedInputError:
            return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, TraceMonomial):
            return mul(TracePolynomial.from_monomial(other), self)
        try:
            return self.scale(other)
        except MalformedInputError:
            return NotImplemented

    def variables(self) -> frozenset[int]:
        out: set[int] = set()
        for m in self._terms:
            out.update(m.letters())
        return frozenset(out)

    def degree(self) -> int:
        """Maximum monomial degree (0 for the zero polynomial)."""
        return max((m.degree for m in self._terms), default=0)

    def is_multilinear(self, variables: Iterable[int] | None = None) -> bool:
        """Every monomial uses each variable of ``variables`` exactly once.

        ``variables`` defaults to the polynomial's own variable set.
        """
        target = sorted(self.variables() if variables is None else variables)
        return all(sorted(m.letters()) == target for m in self._terms)

    def is_pure(self) -> bool:
        return all(m.is_pure for m in self._terms)

    def relabel(self, mapping: Mapping[int, int]) -> "TracePolynomial":
        return TracePolynomial((m.relabel(mapping), c) for m, c in self._terms.items())

    def commutative_form(self) -> "TracePolynomial":
        return project_commutative(self)


def as_polynomial(x) -> TracePolynomial:
    if isinstance(x, TracePolynomial):
        return x
    if isinstance(x, TraceMonomial):
        return TracePolynomial.from_monomial(x)
    raise MalformedInputError(f"cannot interpret {x!r} as a trace polynomial")


def variable(i: int) -> TracePolynomial:
    return TracePolynomial.from_monomial(TraceMonomial((), (i,)))


def trace_of_word(*word: int) -> TracePolynomial:
    return TracePolynomial.from_monomial(TraceMonomial((tuple(word),), ()))


def one() -> TracePolynomial:
    return TracePolynomial.from_monomial(UNIT)


def mul(p, q) -> TracePolynomial:
    """Product in the free algebra with trace; trace factors are central."""
    p, q = as_polynomial(p), as_polynomial(q)
    acc: dict[TraceMonomial, Fraction] = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            m = TraceMonomial(m1.blocks + m2.blocks, m1.outside + m2.outside)
            acc[m] = acc.get(m, 0) + c1 * c2
    return TracePolynomial._from_clean({m: c for m, c in acc.items() if c})


def wrap_trace(p) -> TracePolynomial:
    """Apply ``Tr`` linearly: the outside word of each term becomes a block.

    ``Tr`` of a term with an empty outside word would need ``Tr(1)``, which
    is not modelled, so such terms raise.
    """
    p = as_polynomial(p)
    acc: dict[TraceMonomial, Fraction] = {}
    for m, c in p.terms.items():
        if not m.outside:
            raise UnsupportedOperationError(
                f"Tr applied to a term with empty outside word: {format_monomial(m)}"
            )
        w = TraceMonomial(m.blocks + (m.outside,), ())
        acc[w] = acc.get(w, 0) + c
    return TracePolynomial._from_clean({m: c for m, c in acc.items() if c})


def substitute(p, sigma: Mapping[int, object], multilinear: bool = True) -> TracePolynomial:
    """Image of ``p`` under the endomorphism ``x_i -> sigma[i]``.

    Images may be monomials or polynomials.  Inside a trace block a
    substituted monomial contributes its outside word in place and its own
    trace factors are pulled out as central factors.  With
    ``multilinear=True`` the images of the variables of ``p`` must be
    multilinear on pairwise disjoint variable sets.
    """
    p = as_polynomial(p)
    images = {}
    for v in p.variables():
        if v not in sigma:
            raise MalformedInputError(f"substitution does not cover x{v}")
        images[v] = as_polynomial(sigma[v])
    if multilinear:
        seen: set[int] = set()
        for v in sorted(images):
            img = images[v]
            vs = img.variables()
            if not img.is_multilinear():
                raise MalformedInputError(f"image of x{v} is not multilinear")
            if seen & vs:
                raise MalformedInputError(
                    f"images overlap in variables {sorted(seen & vs)}; result would not be multilinear"
                )
            seen |= vs
    term_lists = {v: list(img.terms.items()) for v, img in images.items()}
    acc: dict[TraceMonomial, Fraction] = {}
    for m, c in p.terms.items():
        letters = m.letters()
        for choice in itertools.product(*(term_lists[v] for v in letters)):
            coeff = c
            central: list[Word] = []
            pieces: list[Word] = []
            for mono, k in choice:
                coeff *= k
                central.extend(mono.blocks)
                pieces.append(mono.outside)
            pos = 0
            blocks = list(central)
            for b in m.blocks:
                word = tuple(itertools.chain.from_iterable(pieces[pos : pos + len(b)]))
                pos += len(b)
                if not word:
                    raise UnsupportedOperationError(
                        "substitution produces Tr of the empty word"
                    )
                blocks.append(word)
            outside = tuple(itertools.chain.from_iterable(pieces[pos:]))
            new = TraceMonomial(tuple(blocks), outside)
            acc[new] = acc.get(new, 0) + coeff
    return TracePolynomial._from_clean({k: v for k, v in acc.items() if v})


def project_commutative(p) -> TracePolynomial:
    """Image in the free commutative algebra with trace."""
    p = as_polynomial(p)
    return TracePolynomial((m.commutative_form(), c) for m, c in p.terms.items())


def mt_dimension(n: int, mode: str = GENERAL) -> int:
    """Size of the monomial basis of MT_n without enumerating it."""
    from math import factorial

    from .comb import bell

    if mode == GENERAL:
        return factorial(n + 1)
    if mode == COMMUTATIVE:
        return bell(n + 1)
    raise MalformedInputError(f"unknown mode {mode!r}")


@lru_cache(maxsize=None)
def _enumerate(n: int, mode: str) -> tuple[TraceMonomial, ...]:
    from .comb import set_partitions

    star = n + 1
    out = []
    for partition in set_partitions(range(1, n + 2)):
        if mode == COMMUTATIVE:
            blocks = tuple(tuple(b) for b in partition if star not in b)
            outside = next(tuple(v for v in b if v != star) for b in partition if star in b)
            out.append(TraceMonomial(blocks, outside))
            continue
        options = []
        for b in partition:
            if star in b:
                rest = [v for v in b if v != star]
                options.append([("o", w) for w in itertools.permutations(rest)])
            else:
                head, tail = b[0], b[1:]
                options.append([("b", (head,) + w) for w in itertools.permutations(tail)])
        for combo in itertools.product(*options):
            blocks = tuple(w for kind, w in combo if kind == "b")
            outside = next(w for kind, w in combo if kind == "o")
            out.append(TraceMonomial(blocks, outside))
    out.sort(key=TraceMonomial.sort_key)
    return tuple(out)


def enumerate_mt(n: int, mode: str = GENERAL) -> tuple[TraceMonomial, ...]:
    """Canonical monomial basis of MT_n in deterministic order.

    ``general`` gives all (n+1)! multilinear monomials; ``commutative`` gives
    one representative per class under full commutativity (Bell(n+1) of
    them).

    >>> [str(m) for m in enumerate_mt(1)]
    ['x1', 'Tr(x1)']
    """
    if not isinstance(n, int) or n < 1:
        raise MalformedInputError("MT_n is only modelled for n >= 1")
    if mode not in MODES:
        raise MalformedInputError(f"unknown mode {mode!r}")
    return _enumerate(n, mode)
