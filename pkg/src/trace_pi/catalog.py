"""Named generator polynomials for the diagonal and truncated-polynomial algebras."""

from __future__ import annotations

from fractions import Fraction

from .errors import MalformedInputError
from .poly import TraceMonomial, TracePolynomial, mul, trace_of_word, variable
from .rational import to_fraction


def _m(blocks=(), outside=()) -> TraceMonomial:
    return TraceMonomial(tuple(tuple(b) for b in blocks), tuple(outside))


def _poly(terms) -> TracePolynomial:
    return TracePolynomial((_m(b, o), c) for c, b, o in terms)


def f1() -> TracePolynomial:
    return _poly([(1, [], [1, 2]), (-1, [], [2, 1])])


def f2(a) -> TracePolynomial:
    return _poly([(1, [[1], [2]], []), (-a, [[1, 2]], [])])


def f3(a) -> TracePolynomial:
    return _poly(
        [
            (1, [[1], [2]], []),
            (a * a, [], [1, 2]),
            (a * a, [], [2, 1]),
            (-a, [[1]], [2]),
            (-a, [[2]], [1]),
            (-a, [[1, 2]], []),
        ]
    )


def f4(a, b) -> TracePolynomial:
    s = a + b
    return _poly(
        [
            (1, [[1], [2]], [3]),
            (-1, [[1], [2, 3]], []),
            (-1, [[2], [3]], [1]),
            (1, [[1, 2], [3]], []),
            (-s, [[1, 2]], [3]),
            (s, [[2, 3]], [1]),
        ]
    )


def f5(a, b) -> TracePolynomial:
    s, p = a + b, a * b
    return _poly(
        [
            (1, [[1], [2], [3]], []),
            (-s, [[1], [2, 3]], []),
            (-s, [[2], [3]], [1]),
            (p, [[1]], [2, 3]),
            (p, [[2]], [1, 3]),
            (p, [[3]], [1, 2]),
            (p, [[1, 2, 3]], []),
            (-p, [[1, 2]], [3]),
            (-p, [[1, 3]], [2]),
            (a * a + p + b * b, [[2, 3]], [1]),
            (-(a * b * b + a * a * b), [], [1, 2, 3]),
        ]
    )


def g3(a) -> TracePolynomial:
    return _poly(
        [
            (1, [[1], [2], [3]], []),
            (2 * a * a, [[1, 2, 3]], []),
            (-a, [[1], [2, 3]], []),
            (-a, [[2], [1, 3]], []),
            (-a, [[1, 2], [3]], []),
        ]
    )


def g4(a, b) -> TracePolynomial:
    s = a + b
    return _poly(
        [
            (1, [[1], [2], [3, 4]], []),
            (-1, [[1], [4], [2, 3]], []),
            (-1, [[2], [3], [1, 4]], []),
            (1, [[3], [4], [1, 2]], []),
            (-s, [[1, 2], [3, 4]], []),
            (s, [[1, 4], [2, 3]], []),
        ]
    )


def g5(a, b) -> TracePolynomial:
    s, p = a + b, a * b
    return _poly(
        [
            (1, [[1], [2], [3], [4]], []),
            (-s, [[1], [4], [2, 3]], []),
            (-s, [[2], [3], [1, 4]], []),
            (p, [[1], [2, 3, 4]], []),
            (p, [[2], [1, 3, 4]], []),
            (p, [[3], [1, 2, 4]], []),
            (p, [[4], [1, 2, 3]], []),
            (-p, [[1, 2], [3, 4]], []),
            (-p, [[1, 3], [2, 4]], []),
            (b * b + p + a * a, [[1, 4], [2, 3]], []),
            (-(a * b * b + a * a * b), [[1, 2, 3, 4]], []),
        ]
    )


def g6(a) -> TracePolynomial:
    return f2(a)


def g7(a, k) -> TracePolynomial:
    """(Tr(x1) - a x1) ... (Tr(xk) - a xk), fully expanded."""
    out = TracePolynomial.from_monomial(TraceMonomial())
    for i in range(1, k + 1):
        out = mul(out, trace_of_word(i) - variable(i).scale(a))
    return out


def h2() -> TracePolynomial:
    return h4(Fraction(0))


def h3() -> TracePolynomial:
    return h5(Fraction(0))


def h4(a) -> TracePolynomial:
    return _poly(
        [
            (1, [[1], [2]], [3]),
            (-1, [[2], [3]], [1]),
            (1, [[1, 2], [3]], []),
            (-1, [[2, 3], [1]], []),
            (-a, [[1, 2]], [3]),
            (a, [[2, 3]], [1]),
        ]
    )


def h5(a) -> TracePolynomial:
    return _poly(
        [
            (-1, [[1, 2]], [3]),
            (-1, [[1, 3]], [2]),
            (-1, [[2, 3]], [1]),
            (1, [[1, 2, 3]], []),
            (1, [[1]], [2, 3]),
            (1, [[2]], [1, 3]),
            (1, [[3]], [1, 2]),
            (-a, [], [1, 2, 3]),
        ]
    )


# name -> (parameter names, builder)
CATALOG = {
    "f1": ((), f1),
    "f2": (("alpha",), f2),
    "f3": (("alpha",), f3),
    "f4": (("alpha", "beta"), f4),
    "f5": (("alpha", "beta"), f5),
    "g3": (("alpha",), g3),
    "g4": (("alpha", "beta"), g4),
    "g5": (("alpha", "beta"), g5),
    "g6": (("alpha",), g6),
    "g7": (("alpha", "k"), g7),
    "h2": ((), h2),
    "h3": ((), h3),
    "h4": (("alpha",), h4),
    "h5": (("alpha",), h5),
}


def catalog_params(name: str) -> tuple[str, ...]:
    if name not in CATALOG:
        raise MalformedInputError(f"unknown catalog polynomial {name!r}")
    return CATALOG[name][0]


def catalog(name: str, params=()) -> TracePolynomial:
    """Named polynomial with concrete parameters, e.g. ``catalog("f2", [1])``.

    Parameters are given positionally in the order (alpha, beta) or
    (alpha, k); ``k`` must be a positive integer.
    """
    names = catalog_params(name)
    params = list(params)
    if len(params) != len(names):
        raise MalformedInputError(f"{name} takes {len(names)} parameter(s) {names}, got {len(params)}")
    values = []
    for pname, value in zip(names, params):
        if pname == "k":
            k = to_fraction(value)
            if k.denominator != 1 or k < 1:
                raise MalformedInputError(f"k must be a positive integer, got {value!r}")
            values.append(int(k))
        else:
            values.append(to_fraction(value))
    return CATALOG[name][1](*values)
