"""Roots, Coxeter elements and tau-orbits at the level of dimension vectors.

Vectors are integer tuples indexed by vertex (0-based).  The Coxeter element
is built as a product of simple reflections over a topological order of the
quiver; ``cox_inv`` applies the source reflection first and computes the
inverse Auslander-Reiten translate on classes of non-injective
indecomposables.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .cartan import CartanDatum, ValuedQuiver
from .errors import (
    CyclicOrientation,
    EulerFormViolation,
    InfiniteRootSystem,
    NegativeNotMinusProjective,
    NonDynkinInput,
    OrbitStructureViolation,
    OrderNotFoundWithinCap,
)
from .linalg import Matrix

Vector = tuple[int, ...]

DEFAULT_ORDER_CAP = 10000


def unit(n: int, i: int, sign: int = 1) -> Vector:
    return tuple(sign if k == i else 0 for k in range(n))


def simple_reflection(cd: CartanDatum, i: int, x: Sequence[int]) -> Vector:
    """s_i(x) = x - (C x)_i e_i."""
    ci = sum(a * b for a, b in zip(cd.C[i], x))
    return tuple(v - ci if k == i else v for k, v in enumerate(x))


def reflection_matrix(cd: CartanDatum, i: int) -> Matrix:
    n = cd.n
    return la.freeze(
        [[(1 if r == c else 0) - (cd.C[i][c] if r == i else 0) for c in range(n)] for r in range(n)]
    )


def symmetric_pairing(cd: CartanDatum, x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, la.matvec(cd.symmetric_form, y)))


def euler_pairing(cd: CartanDatum, x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, la.matvec(cd.E, y)))


def is_positive(x: Sequence[int]) -> bool:
    return all(v >= 0 for v in x) and any(x)


@dataclass(frozen=True)
class RootSystem:
    roots: tuple[Vector, ...]
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def positive(self) -> tuple[Vector, ...]:
        return tuple(r for r in self.roots if is_positive(r))


def enumerate_roots(cd: CartanDatum, depth_limit: int | None = None) -> RootSystem:
    """Breadth-first closure of {±e_i} under the simple reflections.

    Without ``depth_limit`` the datum must be Dynkin.  With one, roots reached
    by reflection words longer than the limit are not explored and the result
    is flagged ``truncated`` when unexplored roots remain.
    """
    if depth_limit is None and not cd.classification.is_dynkin:
        raise InfiniteRootSystem(f"{cd.classification} root system is infinite; pass a depth limit")
    n = cd.n
    start = [unit(n, i, s) for i in range(n) for s in (1, -1)]
    depth = {r: 0 for r in start}
    queue = deque(start)
    truncated = False
    while queue:
        x = queue.popleft()
        if depth_limit is not None and depth[x] >= depth_limit:
            if any(simple_reflection(cd, i, x) not in depth for i in range(n)):
                truncated = True
            continue
        for i in range(n):
            y = simple_reflection(cd, i, x)
            if y not in depth:
                depth[y] = depth[x] + 1
                queue.append(y)
    roots = tuple(sorted(depth))
    for r in roots:
        if not (all(v >= 0 for v in r) or all(v <= 0 for v in r)):
            raise OrbitStructureViolation(f"root {r} is neither positive nor negative")
    return RootSystem(roots, truncated)


def topological_order(q: ValuedQuiver) -> list[int]:
    """Vertices sources-first; ties broken by smallest index."""
    indeg = [0] * q.n
    out: dict[int, list[int]] = {i: [] for i in range(q.n)}
    for i, j, _ in q.arrows:
        if i == j:
            raise CyclicOrientation(f"loop at vertex {i + 1}")
        indeg[j] += 1
        out[i].append(j)
    ready = sorted(i for i in range(q.n) if indeg[i] == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
                ready.sort()
    if len(order) != q.n:
        raise CyclicOrientation("the quiver has an oriented cycle")
    return order


@dataclass(frozen=True)
class CoxeterData:
    cox: Matrix
    cox_inv: Matrix
    order: int
    admissible_order: tuple[int, ...]

    @property
    def h(self) -> int:
        return self.order

    def apply(self, x: Sequence[int]) -> Vector:
        return la.matvec(self.cox, x)

    def apply_inv(self, x: Sequence[int]) -> Vector:
        return la.matvec(self.cox_inv, x)


def matrix_order(m: Matrix, cap: int = DEFAULT_ORDER_CAP) -> int:
    ident = la.identity(len(m))
    p = m
    for t in range(1, cap + 1):
        if p == ident:
            return t
        p = la.matmul(p, m)
    raise OrderNotFoundWithinCap(f"matrix order exceeds {cap}; the input is probably not Dynkin")


def coxeter_element(
    cd: CartanDatum,
    q: ValuedQuiver | None = None,
    order: Sequence[int] | None = None,
    cap: int = DEFAULT_ORDER_CAP,
) -> CoxeterData:
    q = cd.quiver if q is None else q
    if cd.has_loops:
        raise CyclicOrientation("Coxeter elements need a loop-free datum")
    topo = tuple(topological_order(q)) if order is None else tuple(order)
    n = cd.n
    cox_inv = la.identity(n)
    for v in topo:
        cox_inv = la.matmul(reflection_matrix(cd, v), cox_inv)
    cox = la.identity(n)
    for v in reversed(topo):
        cox = la.matmul(reflection_matrix(cd, v), cox)
    if la.matmul(cox, cox_inv) != la.identity(n):
        raise EulerFormViolation("Coxeter element and its inverse do not compose to the identity")
    if la.matmul(cd.E, cox) != la.scale(la.transpose(cd.E), -1):
        raise EulerFormViolation("<x, c y> = -<y, x> fails for the Euler form")
    return CoxeterData(cox, cox_inv, matrix_order(cox, cap), topo)


def coxeter_orbits(cd: CartanDatum, cox: CoxeterData, roots: RootSystem) -> list[list[Vector]]:
    """Partition of the roots into orbits of the Coxeter element."""
    if not cd.classification.is_dynkin:
        raise NonDynkinInput("orbit partition needs a finite root system")
    rootset = set(roots.roots)
    seen: set[Vector] = set()
    orbits = []
    for r in roots.roots:  # sorted, so each orbit starts at its smallest root
        if r in seen:
            continue
        orbit = [r]
        seen.add(r)
        x = cox.apply(r)
        while x != r:
            if x not in rootset:
                raise OrbitStructureViolation(f"Coxeter image {x} is not a root")
            orbit.append(x)
            seen.add(x)
            x = cox.apply(x)
        orbits.append(orbit)
    n, h = cd.n, cox.order
    if len(orbits) != n or any(len(o) != h for o in orbits) or len(rootset) != n * h:
        raise OrbitStructureViolation(
            f"expected {n} orbits of size {h}, got sizes {[len(o) for o in orbits]}"
        )
    return orbits


def projective_classes(q: ValuedQuiver) -> list[Vector]:
    """Rows of (I - N)^-1 with N_ij = r_ij / d_j."""
    topological_order(q)  # rejects cycles
    n = q.n
    R = q.weight_matrix()
    # exact: d_j divides r_ij
    N = la.freeze([[R[i][j] // q.d[j] for j in range(n)] for i in range(n)])
    total = la.identity(n)
    power = la.identity(n)
    for _ in range(n):
        power = la.matmul(power, N)
        total = la.add(total, power)
    return [tuple(row) for row in total]


@dataclass(frozen=True)
class TauOrbitData:
    proj_classes: tuple[Vector, ...]
    m: tuple[int, ...]
    rho: tuple[int, ...]
    walk: tuple[tuple[Vector, ...], ...]


def nakayama_permutation(
    cd: CartanDatum, q: ValuedQuiver | None, cox: CoxeterData, num_roots: int | None = None
) -> TauOrbitData:
    """tau-orbit lengths m_i and the Nakayama permutation rho.

    m_i is the least t >= 1 with cox_inv^t [P_i] <= 0; that vector must be
    -[P_rho(i)].  ``walk[i]`` lists the positive roots cox_inv^t [P_i] for
    0 <= t < m_i.
    """
    if not cd.classification.is_dynkin:
        raise NonDynkinInput("the Nakayama permutation is only defined in the Dynkin case")
    q = cd.quiver if q is None else q
    proj = projective_classes(q)
    index = {p: i for i, p in enumerate(proj)}
    m, rho, walk = [], [], []
    for i, p in enumerate(proj):
        x, path = p, []
        for t in range(1, cox.order + 1):
            path.append(x)
            x = cox.apply_inv(x)
            if all(v <= 0 for v in x):
                break
        else:
            raise NegativeNotMinusProjective(f"orbit of P_{i + 1} never becomes negative")
        j = index.get(tuple(-v for v in x))
        if j is None:
            raise NegativeNotMinusProjective(f"c^-{t}[P_{i + 1}] = {x} is not minus a projective class")
        m.append(t)
        rho.append(j)
        walk.append(tuple(path))
    if any(rho[rho[i]] != i for i in range(cd.n)):
        raise NegativeNotMinusProjective(f"rho = {rho} is not an involution")
    if num_roots is not None and 2 * sum(m) != num_roots:
        raise NegativeNotMinusProjective(f"sum of m_i = {sum(m)} but |Phi|/2 = {num_roots // 2}")
    return TauOrbitData(tuple(proj), tuple(m), tuple(rho), tuple(walk))
