"""Exact linear algebra over Q.

Two engines live here:

* fraction-free elimination on sparse integer rows, used for ranks and left
  nullspaces of evaluation matrices (rows are scaled to primitive integer
  vectors, the pivot is always the first nonzero column);
* :class:`EchelonBasis`, an incrementally maintained reduced row echelon
  basis with Fraction entries, used for subspaces of MT_n.

Sparse vectors are ``dict[int, number]`` keyed by column index.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

SparseVec = dict


def primitive_integer_row(row: Mapping[int, Fraction]) -> dict[int, int]:
    """Scale a rational sparse row to a primitive integer row (same sign)."""
    return _primitive(row)[0]


def _primitive(row: Mapping[int, Fraction]) -> tuple[dict[int, int], Fraction]:
    """(primitive integer row, positive factor it was scaled by)."""
    if not row:
        return {}, Fraction(1)
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {c: int(v * den) for c, v in row.items() if v}
    g = 0
    for v in out.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    return out, Fraction(den, max(g, 1))


class FractionFreeEliminator:
    """Incremental fraction-free Gaussian elimination on sparse integer rows.

    ``add`` returns ``None`` when the row is independent of the rows seen so
    far.  When tracking is on and the row is dependent, it returns the
    combination of input rows (by insertion index) that vanishes.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.pivots: dict[int, tuple[dict, dict | None]] = {}
        self.count = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: Mapping[int, Fraction]):
        index = self.count
        self.count += 1
        v, scale = _primitive(row)
        comb = {index: scale} if self.track else None
        pivots = self.pivots
        while v:
            c = min(v)
            hit = pivots.get(c)
            if hit is None:
                pivots[c] = (v, comb)
                return None
            p, pcomb = hit
            a, b = p[c], v[c]
            g = gcd(a, b)
            a //= g
            b //= g
            nv = {k: a * x for k, x in v.items()}
            for k, x in p.items():
                y = nv.get(k, 0) - b * x
                if y:
                    nv[k] = y
                else:
                    nv.pop(k, None)
            content = 0
            for x in nv.values():
                content = gcd(content, x)
                if content == 1:
                    break
            if comb is not None:
                ncomb = {k: a * x for k, x in comb.items()}
                for k, x in pcomb.items():
                    y = ncomb.get(k, 0) - b * x
                    if y:
                        ncomb[k] = y
                    else:
                        ncomb.pop(k, None)
                comb = ncomb
            if content > 1:
                nv = {k: x // content for k, x in nv.items()}
                if comb is not None:
                    comb = {k: x / content for k, x in comb.items()}
            v = nv
        return comb if self.track else {}


def rank(rows: Iterable[Mapping[int, Fraction]]) -> int:
    """Exact rank of a sparse rational matrix given by rows."""
    elim = FractionFreeEliminator()
    for row in rows:
        elim.add(row)
    return elim.rank


def left_nullspace(rows: Sequence[Mapping[int, Fraction]]) -> tuple[int, list[dict[int, Fraction]]]:
    """Rank and a basis of ``{y : y M = 0}`` as combinations of rows."""
    elim = FractionFreeEliminator(track=True)
    null = []
    for row in rows:
        comb = elim.add(row)
        if comb is not None:
            null.append(comb)
    return elim.rank, null


def rref_dense(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of a small dense matrix; returns (rows, pivots)."""
    m = [[Fraction(x) for x in row] for row in matrix]
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right nullspace, one vector per free column (ascending),
    with that free coordinate equal to 1."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows, pivots = rref_dense(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        out.append(v)
    return out


class EchelonBasis:
    """Subspace of Q^N kept in reduced row echelon form.

    Each stored row has a 1 at its pivot (its smallest column) and zeros at
    every other pivot column, so reducing a vector needs one pass over the
    pivots it touches.
    """

    def __init__(self):
        self.rows: dict[int, dict[int, Fraction]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        v = {c: Fraction(x) for c, x in vec.items() if x}
        rows = self.rows
        for p in [c for c in v if c in rows]:
            coeff = v.get(p)
            if not coeff:
                continue
            for c, x in rows[p].items():
                y = v.get(c, 0) - coeff * x
                if y:
                    v[c] = y
                else:
                    v.pop(c, None)
        return v

    def __contains__(self, vec) -> bool:
        return not self.reduce(vec)

    def insert(self, vec: Mapping[int, Fraction]) -> bool:
        """Add ``vec`` to the span; return True if the dimension grew."""
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {c: x * inv for c, x in r.items()}
        for row in self.rows.values():
            f = row.get(p)
            if f:
                for c, x in r.items():
                    y = row.get(c, 0) - f * x
                    if y:
                        row[c] = y
                    else:
                        row.pop(c, None)
        self.rows[p] = r
        return True

    def extend(self, vecs: Iterable[Mapping[int, Fraction]]) -> int:
        return sum(self.insert(v) for v in vecs)

    def basis(self) -> list[dict[int, Fraction]]:
        """Rows sorted by pivot column."""
        return [dict(sorted(self.rows[p].items())) for p in sorted(self.rows)]
