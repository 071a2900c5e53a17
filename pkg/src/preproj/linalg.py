"""Exact integer linear algebra.

Matrices are tuples of tuples of Python ints.  Ranks are computed by
fraction-free elimination on sparse rows (``dict`` column -> coefficient),
with each row divided by the gcd of its entries after every update so that
coefficients stay small.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Matrix = tuple[tuple[int, ...], ...]
SparseRow = dict


def freeze(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int, scale: int = 1) -> Matrix:
    return tuple(tuple(scale if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple((0,) * m for _ in range(n))


def diag(entries: Sequence[int]) -> Matrix:
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    # accumulate row by row, skipping the many zeros in Cartan-type data
    m = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * m
        for x, brow in zip(row, b):
            if x:
                for k, y in enumerate(brow):
                    if y:
                        acc[k] += x * y
        out.append(tuple(acc))
    return tuple(out)


def matvec(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(a: Matrix, k: int) -> Matrix:
    return tuple(tuple(k * x for x in row) for row in a)


def is_symmetric(a: Matrix) -> bool:
    return a == transpose(a)


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def matpow(a: Matrix, k: int) -> Matrix:
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def bareiss_det(a: Matrix) -> int:
    """Determinant by Bareiss fraction-free elimination (with row pivoting)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact: Sylvester's identity guarantees divisibility
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def leading_principal_minors(a: Matrix) -> list[int]:
    return [bareiss_det(tuple(row[:k] for row in a[:k])) for k in range(1, len(a) + 1)]


def psd_nullity(a: Matrix) -> tuple[bool, int]:
    """Decide positive semidefiniteness of a symmetric integer matrix.

    Returns ``(is_psd, nullity)``; ``nullity`` is only meaningful when
    ``is_psd`` is true.  Symmetric elimination over the rationals: a zero
    pivot with a nonzero row below it certifies indefiniteness.
    """
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    nullity = 0
    active = list(range(n))
    while active:
        k = active.pop(0)
        piv = m[k][k]
        if piv < 0:
            return False, 0
        if piv == 0:
            if any(m[k][j] != 0 for j in active):
                return False, 0
            nullity += 1
            continue
        for i in active:
            f = m[i][k] / piv
            if f:
                for j in active:
                    m[i][j] -= f * m[k][j]
    return True, nullity


def _normalize(row: SparseRow) -> SparseRow:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        for k in row:
            row[k] //= g
    return row


class SparseEchelon:
    """Incremental row echelon form over Q (exact) or GF(p).

    Rows are sparse dicts.  ``add`` returns True when the row enlarges the
    span.  The leading column of a row is its smallest key.
    """

    def __init__(self, prime: int | None = None):
        self.prime = prime
        self.pivots: dict = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: SparseRow) -> SparseRow:
        row = {k: v for k, v in row.items() if v}
        p = self.prime
        if p is not None:
            row = {k: v % p for k, v in row.items() if v % p}
        while row:
            col = min(row)
            prow = self.pivots.get(col)
            if prow is None:
                return row
            b = row[col]
            if p is None:
                a = prow[col]
                g = gcd(a, b)
                fa, fb = a // g, b // g
                new = {k: fa * v for k, v in row.items()}
                for k, v in prow.items():
                    nv = new.get(k, 0) - fb * v
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                row = _normalize(new)
            else:
                # pivot rows are stored monic in prime mode
                new = dict(row)
                for k, v in prow.items():
                    nv = (new.get(k, 0) - b * v) % p
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                row = new
        return row

    def add(self, row: SparseRow) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        col = min(row)
        if self.prime is not None:
            inv = pow(row[col], -1, self.prime)
            row = {k: v * inv % self.prime for k, v in row.items()}
        self.pivots[col] = row
        return True

    def contains(self, row: SparseRow) -> bool:
        return not self.reduce(row)


def rank(rows: Iterable[SparseRow], prime: int | None = None) -> int:
    ech = SparseEchelon(prime)
    for row in rows:
        ech.add(row)
    return ech.rank


def dense_rank(a: Matrix, prime: int | None = None) -> int:
    return rank(({j: x for j, x in enumerate(row) if x} for row in a), prime)


def nullspace(rows: Sequence[SparseRow], ncols: int) -> list[tuple[int, ...]]:
    """Integer basis of {x in Q^ncols : row . x = 0 for every row}.

    Reduced row echelon form over Fractions; each basis vector is scaled to
    a primitive integer vector.
    """
    m = [[Fraction(r.get(j, 0)) for j in range(ncols)] for r in rows]
    pivot_cols: list[int] = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in set(pivot_cols)]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * ncols
        vec[fcol] = Fraction(1)
        for i, pc in enumerate(pivot_cols):
            vec[pc] = -m[i][fcol]
        basis.append(_primitive(vec))
    return basis


def _primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    g = g or 1
    return tuple(x // g for x in ints)
