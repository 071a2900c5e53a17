"""Valued quivers, their Cartan data, and the Dynkin/affine classification."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from . import linalg as la
from .errors import (
    DisconnectedQuiver,
    DivisibilityViolation,
    EmptyQuiver,
    NonCartanEntries,
    NotSymmetrizable,
)
from .linalg import Matrix

DYNKIN = "Dynkin"
AFFINE = "Affine"
INDEFINITE = "Indefinite"
BORCHERDS = "BorcherdsWithLoops"


@dataclass(frozen=True)
class ValuedQuiver:
    """Vertex weights ``d`` and merged weighted arrows, 0-based.

    ``arrows`` holds ``(source, target, weight)`` triples, sorted, with at
    most one entry per ordered pair.  Use :meth:`create` to merge parallel
    arrows from raw input.
    """

    d: tuple[int, ...]
    arrows: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        n = len(self.d)
        if n == 0:
            raise EmptyQuiver("a valued quiver needs at least one vertex")
        for i, di in enumerate(self.d):
            if di < 1:
                raise NonCartanEntries(f"vertex {i + 1}: weight d={di} must be positive")
        seen = set()
        for i, j, w in self.arrows:
            if not (0 <= i < n and 0 <= j < n):
                raise NonCartanEntries(f"arrow {i + 1}->{j + 1} references a missing vertex")
            if w < 1:
                raise NonCartanEntries(f"arrow {i + 1}->{j + 1}: weight {w} must be positive")
            if (i, j) in seen:
                raise NonCartanEntries(f"arrow {i + 1}->{j + 1} listed twice; use create()")
            seen.add((i, j))
            if w % self.d[i] or w % self.d[j]:
                raise DivisibilityViolation(
                    f"arrow {i + 1}->{j + 1}: weight {w} not divisible by "
                    f"d_{i + 1}={self.d[i]} and d_{j + 1}={self.d[j]}"
                )
        if not _connected(n, [(i, j) for i, j, _ in self.arrows]):
            raise DisconnectedQuiver("the underlying graph of the quiver is not connected")

    @classmethod
    def create(cls, d: Sequence[int], arrows: Iterable[tuple[int, int, int]]) -> "ValuedQuiver":
        merged: dict[tuple[int, int], int] = defaultdict(int)
        for i, j, w in arrows:
            merged[(i, j)] += w
        return cls(tuple(d), tuple(sorted((i, j, w) for (i, j), w in merged.items())))

    @property
    def n(self) -> int:
        return len(self.d)

    @property
    def has_loops(self) -> bool:
        return any(i == j for i, j, _ in self.arrows)

    def weight_matrix(self) -> Matrix:
        r = [[0] * self.n for _ in range(self.n)]
        for i, j, w in self.arrows:
            r[i][j] = w
        return la.freeze(r)

    def reversed(self, which: Iterable[int] | None = None) -> "ValuedQuiver":
        """Reverse the arrows at the given positions (all arrows by default)."""
        idx = set(range(len(self.arrows))) if which is None else set(which)
        flipped = [
            (j, i, w) if k in idx else (i, j, w) for k, (i, j, w) in enumerate(self.arrows)
        ]
        return ValuedQuiver.create(self.d, flipped)

    def is_simply_laced(self) -> bool:
        return all(x == 1 for x in self.d)


def _connected(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    adj = defaultdict(set)
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    seen = {0}
    todo = [0]
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == n


@dataclass(frozen=True)
class Classification:
    kind: str
    dynkin_type: str | None = None

    def __str__(self) -> str:
        return f"{self.kind}({self.dynkin_type})" if self.dynkin_type else self.kind

    @property
    def is_dynkin(self) -> bool:
        return self.kind == DYNKIN


@dataclass(frozen=True)
class CartanDatum:
    quiver: ValuedQuiver
    D: Matrix
    R: Matrix
    B: Matrix
    Bbar: Matrix
    C: Matrix
    E: Matrix
    classification: Classification = field(compare=False)

    @property
    def n(self) -> int:
        return len(self.D)

    @property
    def d(self) -> tuple[int, ...]:
        return self.quiver.d

    @property
    def has_loops(self) -> bool:
        return any(self.Bbar[i][i] for i in range(self.n))

    @property
    def symmetric_form(self) -> Matrix:
        """The matrix D*C = 2D - B of the symmetrised bilinear form."""
        return la.matmul(self.D, self.C)

    def is_simply_laced(self) -> bool:
        return self.quiver.is_simply_laced()


def _matrices(q: ValuedQuiver) -> tuple[Matrix, ...]:
    n = q.n
    D = la.diag(q.d)
    R = q.weight_matrix()
    B = la.add(R, la.transpose(R))
    # exact: d_i divides every b_ij by the divisibility invariant
    Bbar = la.freeze([[B[i][j] // q.d[i] for j in range(n)] for i in range(n)])
    C = la.sub(la.identity(n, 2), Bbar)
    E = la.sub(D, R)
    return D, R, B, Bbar, C, E


def build_cartan(q: ValuedQuiver) -> CartanDatum:
    D, R, B, Bbar, C, E = _matrices(q)
    return CartanDatum(q, D, R, B, Bbar, C, E, _classify(q.d, C, Bbar))


def minimal_symmetrizer(C: Matrix) -> tuple[int, ...]:
    """Smallest positive integer vector d with diag(d)*C symmetric."""
    n = len(C)
    for i in range(n):
        for j in range(n):
            if (C[i][j] == 0) != (C[j][i] == 0):
                raise NotSymmetrizable(f"C[{i + 1}][{j + 1}] and C[{j + 1}][{i + 1}] disagree on zero")
    ratio: dict[int, Fraction] = {0: Fraction(1)}
    todo = deque([0])
    while todo:
        i = todo.popleft()
        for j in range(n):
            if j == i or C[i][j] == 0:
                continue
            dj = ratio[i] * C[i][j] / C[j][i]
            if j not in ratio:
                ratio[j] = dj
                todo.append(j)
            elif ratio[j] != dj:
                raise NotSymmetrizable("no positive diagonal symmetrizer exists (inconsistent cycle)")
    if len(ratio) != n:
        raise DisconnectedQuiver("the Cartan matrix is decomposable")
    den = lcm(*(x.denominator for x in ratio.values()))
    ints = [int(ratio[i] * den) for i in range(n)]
    g = gcd(*ints)
    return tuple(x // g for x in ints)


def from_cartan_matrix(C: Sequence[Sequence[int]], symmetrizer: Sequence[int] | None = None) -> CartanDatum:
    C = la.freeze(C)
    n = len(C)
    if n == 0:
        raise EmptyQuiver("empty Cartan matrix")
    if any(len(row) != n for row in C):
        raise NonCartanEntries("Cartan matrix must be square")
    for i in range(n):
        if C[i][i] > 2:
            raise NonCartanEntries(f"diagonal entry C[{i + 1}][{i + 1}]={C[i][i]} exceeds 2")
        for j in range(n):
            if i != j and C[i][j] > 0:
                raise NonCartanEntries(f"off-diagonal entry C[{i + 1}][{j + 1}]={C[i][j]} is positive")
    if symmetrizer is None:
        d = minimal_symmetrizer(C)
    else:
        d = tuple(int(x) for x in symmetrizer)
        if len(d) != n or any(x < 1 for x in d):
            raise NotSymmetrizable("symmetrizer must be a positive vector of length n")
        if not la.is_symmetric(la.matmul(la.diag(d), C)):
            raise NotSymmetrizable("diag(symmetrizer) * C is not symmetric")
    Bbar = la.sub(la.identity(n, 2), C)
    B = la.matmul(la.diag(d), Bbar)
    arrows = []
    for i in range(n):
        if B[i][i]:
            if B[i][i] % 2:
                raise NonCartanEntries(f"loop at vertex {i + 1} would need half-integer weight")
            arrows.append((i, i, B[i][i] // 2))
        for j in range(i + 1, n):
            if B[i][j]:
                arrows.append((i, j, B[i][j]))
    cd = build_cartan(ValuedQuiver.create(d, arrows))
    assert cd.C == C
    return cd


def classify(cd: CartanDatum) -> Classification:
    return _classify(cd.d, cd.C, cd.Bbar)


def _classify(d: Sequence[int], C: Matrix, Bbar: Matrix) -> Classification:
    n = len(C)
    if any(Bbar[i][i] > 0 for i in range(n)):
        return Classification(BORCHERDS)
    form = la.matmul(la.diag(d), C)
    if all(m > 0 for m in la.leading_principal_minors(form)):
        return Classification(DYNKIN, dynkin_type_name(C))
    psd, nullity = la.psd_nullity(form)
    if psd and nullity == 1:
        return Classification(AFFINE)
    return Classification(INDEFINITE)


# -- standard diagrams -------------------------------------------------------


def standard_quiver(name: str) -> ValuedQuiver:
    """The standard valued quiver of a Dynkin type, e.g. ``"E6"`` or ``"B3"``.

    Arrows run from the smaller to the larger index with weight
    ``max(d_i, d_j)``.
    """
    letter, rank = name[0].upper(), int(name[1:])
    chain = [(i, i + 1) for i in range(rank - 1)]
    if letter == "A" and rank >= 1:
        d, edges = [1] * rank, chain
    elif letter == "B" and rank >= 2:
        d, edges = [2] * (rank - 1) + [1], chain
    elif letter == "C" and rank >= 3:
        d, edges = [1] * (rank - 1) + [2], chain
    elif letter == "D" and rank >= 4:
        d, edges = [1] * rank, [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    elif letter == "E" and rank in (6, 7, 8):
        d = [1] * rank
        edges = [(0, 2)] + [(i, i + 1) for i in range(2, rank - 1)] + [(1, 3)]
    elif name.upper() == "F4":
        d, edges = [2, 2, 1, 1], chain
    elif name.upper() == "G2":
        d, edges = [3, 1], chain
    else:
        raise NonCartanEntries(f"unknown Dynkin type {name!r}")
    return ValuedQuiver.create(d, [(i, j, max(d[i], d[j])) for i, j in edges])


def _candidate_names(n: int) -> list[str]:
    names = [f"A{n}"]
    if n >= 2:
        names.append(f"B{n}")
    if n >= 3:
        names.append(f"C{n}")
    if n >= 4:
        names.append(f"D{n}")
    if n in (6, 7, 8):
        names.append(f"E{n}")
    if n == 4:
        names.append("F4")
    if n == 2:
        names.append("G2")
    return names


def _isomorphic(c1: Matrix, c2: Matrix) -> bool:
    """Is there a vertex permutation p with c2[p(i)][p(j)] == c1[i][j]?"""
    n = len(c1)
    if n != len(c2):
        return False

    def profile(c, i):
        return sorted((c[i][j], c[j][i]) for j in range(n) if j != i)

    p1 = [profile(c1, i) for i in range(n)]
    p2 = [profile(c2, i) for i in range(n)]
    image: list[int] = []
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for k in range(n):
            if used[k] or p1[i] != p2[k] or c1[i][i] != c2[k][k]:
                continue
            if all(c1[i][j] == c2[k][image[j]] and c1[j][i] == c2[image[j]][k] for j in range(i)):
                used[k] = True
                image.append(k)
                if extend(i + 1):
                    return True
                image.pop()
                used[k] = False
        return False

    return extend(0)


def dynkin_type_name(C: Matrix) -> str | None:
    for name in _candidate_names(len(C)):
        if _isomorphic(C, _matrices(standard_quiver(name))[4]):
            return name
    return None
