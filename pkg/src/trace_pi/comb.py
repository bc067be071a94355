"""Stirling and Bell numbers, set partitions, and closed-form codimensions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Iterable, Iterator

from .errors import MalformedInputError


def set_partitions(items: Iterable[int]) -> Iterator[list[tuple[int, ...]]]:
    """All set partitions, each block sorted, blocks ordered by minimum.

    >>> list(set_partitions([1, 2]))
    [[(1, 2)], [(1,), (2,)]]
    """
    items = list(items)
    n = len(items)
    if n == 0:
        yield []
        return
    # restricted growth strings: code[i] <= 1 + max(code[:i])
    code = [0] * n

    def rec(i: int, top: int):
        if i == n:
            blocks: list[list[int]] = [[] for _ in range(top + 1)]
            for item, c in zip(items, code):
                blocks[c].append(item)
            yield [tuple(b) for b in blocks]
            return
        for c in range(top + 2):
            code[i] = c
            yield from rec(i + 1, max(top, c))

    code[0] = 0
    yield from rec(1, 0)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind via S(n,k) = k S(n-1,k) + S(n-1,k-1).

    >>> stirling2(4, 2)
    7
    """
    if n < 0 or k < 0:
        raise MalformedInputError("stirling2 needs n, k >= 0")
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def stirling2_explicit(n: int, k: int) -> int:
    """The alternating-sum formula, evaluated with exact rationals."""
    total = Fraction(
        sum((-1) ** (k - i) * comb(k, i) * i**n for i in range(k + 1)), factorial(k)
    )
    if total.denominator != 1:
        raise ArithmeticError(f"non-integral Stirling value at ({n}, {k})")
    return total.numerator


@lru_cache(maxsize=None)
def bell(n: int) -> int:
    """Bell number from the Bell triangle (independent of Stirling numbers)."""
    if n < 0:
        raise MalformedInputError("bell needs n >= 0")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


@dataclass
class StirlingCheck:
    max_n: int
    checked: int = 0
    failures: list[tuple[int, int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def stirling_identity_check(max_n: int) -> StirlingCheck:
    """Check S(n+1, k+1) = sum_{t=k}^{n} C(n,t) S(t,k) for 0 <= k <= n <= max_n."""
    if max_n < 1:
        raise MalformedInputError("max_n must be >= 1")
    report = StirlingCheck(max_n)
    for n in range(max_n + 1):
        for k in range(n + 1):
            lhs = stirling2(n + 1, k + 1)
            rhs = sum(comb(n, t) * stirling2(t, k) for t in range(k, n + 1))
            report.checked += 1
            if lhs != rhs:
                report.failures.append((n, k, lhs, rhs))
    return report


def count_trace_monomials(n: int, k: int) -> int:
    """Commutative multilinear trace monomials of degree n with exactly k traces.

    Counted by enumeration, not by formula.
    """
    if not (0 <= k <= n):
        raise MalformedInputError("need 0 <= k <= n")
    from .poly import COMMUTATIVE, enumerate_mt

    return sum(1 for m in enumerate_mt(n, COMMUTATIVE) if len(m.blocks) == k)


def _d3_ab0(n: int) -> Fraction:
    return Fraction(3**n + 3 ** (n - 1) * n - 2**n * n + n + 1, 2)


def _ck_a0(n: int, k: int) -> Fraction:
    return Fraction(sum(comb(n, i) for i in range(k)))


# tag -> (parameter names, formula)
CLOSED_FORMS: dict[str, tuple[tuple[str, ...], Callable[..., Fraction]]] = {
    "d2_a0": ((), lambda n: Fraction(2**n)),
    "d2_aa": ((), lambda n: Fraction(2**n)),
    "d2_ab": ((), lambda n: Fraction(2 ** (n + 1) - n - 1)),
    "dn_a00": ((), lambda n: Fraction(2**n)),
    "d3_aa0": ((), lambda n: Fraction(3**n + 1, 2)),
    "d3_ab0": ((), _d3_ab0),
    "c2_01": ((), lambda n: Fraction(2 ** (n + 1) - n - 1)),
    "c2_a1": ((), lambda n: Fraction(2 ** (n + 1) - n - 1)),
    "ck_a0": (("k",), _ck_a0),
}


def closed_form(tag: str, n: int, **params) -> Fraction:
    """Closed-form trace codimension for a tagged algebra family.

    >>> closed_form("ck_a0", 4, k=3)
    Fraction(11, 1)
    """
    if tag not in CLOSED_FORMS:
        raise MalformedInputError(f"unknown closed-form tag {tag!r}")
    names, fn = CLOSED_FORMS[tag]
    if set(params) != set(names):
        raise MalformedInputError(f"tag {tag} takes parameters {names}, got {sorted(params)}")
    if n < 1:
        raise MalformedInputError("closed forms are defined for n >= 1")
    return fn(n, **params)
