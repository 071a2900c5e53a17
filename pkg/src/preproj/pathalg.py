"""Direct linear-algebra model of the preprojective algebra of a quiver.

Everything here works inside the path algebra of the double quiver, truncated
by degree.  Paths compose left to right: ``p q`` means "first p, then q", so
``a a*`` is a path from source(a) back to source(a).  The degree-r part of
the ideal generated by c = sum_a (a a* - a* a) is spanned by ``p (e_v c e_v) q``
with |p| + |q| = r - 2, and dim e_i Pi_r e_j = #paths - rank of that span.

Only simply-laced quivers are modelled (all vertex weights 1); a valuation
r_ij > 1 becomes r_ij parallel arrows.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from . import linalg as la
from .cartan import ValuedQuiver, build_cartan
from .errors import (
    AssociativityViolation,
    Degree3Residual,
    DegreeTooLarge,
    DisconnectedQuiver,
    DynkinNotSupported,
    KernelFound,
    NonCartanEntries,
    NotSimplyLaced,
    PathCountExceeded,
    SurjectivityFailure,
)
from .hilbert import GradedDimTable
from .linalg import Matrix, SparseEchelon

DEFAULT_MAX_DEGREE = 8
DEFAULT_PATH_CAP = 10**6

Path = tuple[int, ...]


@dataclass(frozen=True)
class Arrow:
    label: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise NonCartanEntries("arrow labels must be unique")
        for a in self.arrows:
            if a.label.endswith("*"):
                raise NonCartanEntries(f"label {a.label!r} is reserved for dual arrows")
            if not (0 <= a.source < self.n and 0 <= a.target < self.n):
                raise NonCartanEntries(f"arrow {a.label} references a missing vertex")
        adj = defaultdict(set)
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen, todo = {0}, [0]
        while todo:
            v = todo.pop()
            for w in adj[v] - seen:
                seen.add(w)
                todo.append(w)
        if self.n < 1 or len(seen) != self.n:
            raise DisconnectedQuiver("quiver must be non-empty and connected")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple]) -> "Quiver":
        """Edges as (source, target) or (label, source, target), 0-based."""
        arrows = []
        for k, e in enumerate(edges):
            if len(e) == 3:
                arrows.append(Arrow(str(e[0]), int(e[1]), int(e[2])))
            else:
                arrows.append(Arrow(f"a{k + 1}", int(e[0]), int(e[1])))
        return cls(n, tuple(arrows))

    @classmethod
    def from_valued(cls, vq: ValuedQuiver) -> "Quiver":
        if not vq.is_simply_laced():
            raise NotSimplyLaced("the path-algebra model needs all vertex weights equal to 1")
        edges = []
        for i, j, w in vq.arrows:
            edges.extend([(i, j)] * w)
        return cls.from_edges(vq.n, edges)

    def to_valued(self) -> ValuedQuiver:
        return ValuedQuiver.create((1,) * self.n, [(a.source, a.target, 1) for a in self.arrows])

    def flipped(self, labels: Iterable[str]) -> "Quiver":
        flip = set(labels)
        unknown = flip - {a.label for a in self.arrows}
        if unknown:
            raise NonCartanEntries(f"cannot flip unknown arrows {sorted(unknown)}")
        return Quiver(
            self.n,
            tuple(Arrow(a.label, a.target, a.source) if a.label in flip else a for a in self.arrows),
        )


@dataclass(frozen=True)
class DoubleArrow:
    label: str
    source: int
    target: int
    original: str
    dual: bool


@dataclass(frozen=True)
class DoubleQuiver:
    n: int
    arrows: tuple[DoubleArrow, ...]  # sorted by label

    def index(self, label: str) -> int:
        return self._index[label]

    @cached_property
    def _index(self) -> dict[str, int]:
        return {a.label: k for k, a in enumerate(self.arrows)}

    def adjacency(self) -> Matrix:
        m = [[0] * self.n for _ in range(self.n)]
        for a in self.arrows:
            m[a.source][a.target] += 1
        return la.freeze(m)

    def format_path(self, path: Path) -> str:
        return "·".join(self.arrows[k].label for k in path) if path else "e"


def double_quiver(q: Quiver) -> DoubleQuiver:
    arrows = []
    for a in q.arrows:
        arrows.append(DoubleArrow(a.label, a.source, a.target, a.label, False))
        arrows.append(DoubleArrow(a.label + "*", a.target, a.source, a.label, True))
    return DoubleQuiver(q.n, tuple(sorted(arrows, key=lambda a: a.label)))


@dataclass(frozen=True)
class RelationSet:
    """For each vertex v, e_v c e_v as {length-2 path: coefficient}."""

    per_vertex: tuple[tuple[tuple[Path, int], ...], ...]

    def at(self, v: int) -> tuple[tuple[Path, int], ...]:
        return self.per_vertex[v]

    def total(self) -> dict[Path, int]:
        out: dict[Path, int] = defaultdict(int)
        for terms in self.per_vertex:
            for p, c in terms:
                out[p] += c
        return {p: c for p, c in out.items() if c}


def preprojective_relations(dq: DoubleQuiver) -> RelationSet:
    idx = dq._index
    per_vertex: list[dict[Path, int]] = [defaultdict(int) for _ in range(dq.n)]
    for a in dq.arrows:
        if a.dual:
            continue
        a_, a_star = idx[a.label], idx[a.label + "*"]
        per_vertex[a.source][(a_, a_star)] += 1
        per_vertex[a.target][(a_star, a_)] -= 1
    return RelationSet(
        tuple(tuple(sorted((p, c) for p, c in terms.items() if c)) for terms in per_vertex)
    )


class PathIndex:
    """Cached enumeration of paths in the double quiver, lexicographic by label."""

    def __init__(self, dq: DoubleQuiver, path_cap: int = DEFAULT_PATH_CAP):
        self.dq = dq
        self.path_cap = path_cap
        self._out = defaultdict(list)
        for k, a in enumerate(dq.arrows):
            self._out[a.source].append(k)
        self._from: dict[tuple[int, int], list[Path]] = {}

    def end(self, start: int, path: Path) -> int:
        return self.dq.arrows[path[-1]].target if path else start

    def paths_from(self, v: int, length: int) -> list[Path]:
        key = (v, length)
        if key not in self._from:
            if length == 0:
                paths = [()]
            else:
                paths = []
                for p in self.paths_from(v, length - 1):
                    for k in self._out[self.end(v, p)]:
                        paths.append(p + (k,))
                if len(paths) > self.path_cap:
                    raise PathCountExceeded(
                        f"{len(paths)} paths of length {length} from vertex {v + 1} exceed the cap {self.path_cap}"
                    )
            self._from[key] = paths
        return self._from[key]

    def paths_between(self, i: int, j: int, length: int) -> list[Path]:
        return [p for p in self.paths_from(i, length) if self.end(i, p) == j]


@dataclass
class Block:
    """The (r, i, j) piece: path basis and relation-span echelon form."""

    r: int
    i: int
    j: int
    paths: list[Path]
    echelon: SparseEchelon

    @property
    def rank(self) -> int:
        return self.echelon.rank

    @property
    def dim(self) -> int:
        return len(self.paths) - self.rank


class GradedQuotient:
    """Degree-truncated exact model of kQ̄/<c>.

    ``prime`` switches ranks to GF(p); ``reverse_order`` enumerates paths
    and relations in reverse lexicographic order (ranks must not change).
    """

    def __init__(
        self,
        dq: DoubleQuiver,
        relations: RelationSet | None = None,
        *,
        max_degree: int = DEFAULT_MAX_DEGREE,
        path_cap: int = DEFAULT_PATH_CAP,
        prime: int | None = None,
        reverse_order: bool = False,
    ):
        self.dq = dq
        self.relations = preprojective_relations(dq) if relations is None else relations
        self.max_degree = max_degree
        self.prime = prime
        self.reverse_order = reverse_order
        self.paths = PathIndex(dq, path_cap)
        self._blocks: dict[tuple[int, int, int], Block] = {}

    @property
    def n(self) -> int:
        return self.dq.n

    def _check_degree(self, r: int):
        if r < 0:
            raise ValueError("degree must be non-negative")
        if r > self.max_degree:
            raise DegreeTooLarge(f"degree {r} exceeds the configured maximum {self.max_degree}")

    def relation_vectors(self, r: int, i: int, j: int, column: dict[Path, int]) -> list[dict]:
        rows = []
        for left in range(r - 1):
            right = r - 2 - left
            for p in self.paths.paths_from(i, left):
                v = self.paths.end(i, p)
                terms = self.relations.at(v)
                if not terms:
                    continue
                for q in self.paths.paths_between(v, j, right):
                    row: dict[int, int] = {}
                    for mid, c in terms:
                        col = column[p + mid + q]
                        row[col] = row.get(col, 0) + c
                    rows.append(row)
        if self.reverse_order:
            rows.reverse()
        return rows

    def block(self, r: int, i: int, j: int) -> Block:
        self._check_degree(r)
        key = (r, i, j)
        if key not in self._blocks:
            paths = self.paths.paths_between(i, j, r)
            if self.reverse_order:
                paths = paths[::-1]
            column = {p: k for k, p in enumerate(paths)}
            ech = SparseEchelon(self.prime)
            for row in self.relation_vectors(r, i, j, column):
                ech.add(row)
            self._blocks[key] = Block(r, i, j, paths, ech)
        return self._blocks[key]

    def dims(self, r: int) -> Matrix:
        return la.freeze([[self.block(r, i, j).dim for j in range(self.n)] for i in range(self.n)])

    def table(self, max_degree: int | None = None) -> GradedDimTable:
        top = self.max_degree if max_degree is None else max_degree
        return GradedDimTable(tuple(self.dims(r) for r in range(top + 1)), None, "oracle")


def graded_component_dims(
    dq: DoubleQuiver, relations: RelationSet, r: int, *, max_degree: int = DEFAULT_MAX_DEGREE, prime=None
) -> Matrix:
    return GradedQuotient(dq, relations, max_degree=max_degree, prime=prime).dims(r)


def oracle_table(q: Quiver, max_degree: int, prime: int | None = None) -> GradedDimTable:
    dq = double_quiver(q)
    return GradedQuotient(dq, max_degree=max(max_degree, DEFAULT_MAX_DEGREE), prime=prime).table(max_degree)


# -- socle / injectivity ----------------------------------------------------


@dataclass
class InjectivityReport:
    passed: bool
    r: int
    kernel_dims: list[int] = field(default_factory=list)
    witness: dict | None = None


def socle_injectivity_check(
    dq: DoubleQuiver, relations: RelationSet | None = None, r: int = 0, *, quotient: GradedQuotient | None = None
) -> InjectivityReport:
    """Is x -> (x γ)_γ injective from Pi_r to the direct sum of copies of Pi_{r+1}?

    Raises :class:`KernelFound` with a witness (a combination of degree-r
    paths that is nonzero in Pi_r but killed by every arrow).
    """
    gq = quotient or GradedQuotient(dq, relations, max_degree=max(DEFAULT_MAX_DEGREE, r + 1))
    pi = gq.paths
    arrows = dq.arrows
    kernel_dims = []
    for i in range(dq.n):
        source_paths = pi.paths_from(i, r)
        relation_dim = sum(gq.block(r, i, j).rank for j in range(dq.n))
        nxt = {}
        for k in range(dq.n):
            blk = gq.block(r + 1, i, k)
            nxt[k] = (blk, {p: c for c, p in enumerate(blk.paths)})
        offsets, width = {}, 0
        for g, a in enumerate(arrows):
            offsets[g] = width
            width += len(nxt[a.target][0].paths)
        image_rows = []
        for x in source_paths:
            e = pi.end(i, x)
            row = {}
            for g, a in enumerate(arrows):
                if a.source == e:
                    row[offsets[g] + nxt[a.target][1][x + (g,)]] = 1
            image_rows.append(row)
        rel_rows = []
        for g, a in enumerate(arrows):
            blk = nxt[a.target][0]
            for prow in blk.echelon.pivots.values():
                rel_rows.append({offsets[g] + c: v for c, v in prow.items()})
        ech = SparseEchelon(gq.prime)
        for row in rel_rows:
            ech.add(row)
        rel_rank = ech.rank
        for row in image_rows:
            ech.add(row)
        composite_rank = ech.rank - rel_rank
        kernel_dim = len(source_paths) - composite_rank - relation_dim
        kernel_dims.append(kernel_dim)
        if kernel_dim:
            witness = _kernel_witness(gq, i, r, source_paths, image_rows, rel_rows, width)
            raise KernelFound(
                f"right multiplication by arrows is not injective on e_{i + 1} Pi_{r}", witness
            )
    return InjectivityReport(True, r, kernel_dims)


def _kernel_witness(gq, i, r, source_paths, image_rows, rel_rows, width):
    rows = image_rows + rel_rows
    columns = [dict() for _ in range(width)]
    for k, row in enumerate(rows):
        for c, v in row.items():
            columns[c][k] = v
    for y in la.nullspace(columns, len(rows)):
        alpha = y[: len(image_rows)]
        if not any(alpha):
            continue
        combo = {source_paths[k]: c for k, c in enumerate(alpha) if c}
        inside = True
        by_end = defaultdict(dict)
        for p, c in combo.items():
            by_end[gq.paths.end(i, p)][p] = c
        for j, part in by_end.items():
            blk = gq.block(r, i, j)
            col = {p: k for k, p in enumerate(blk.paths)}
            if not blk.echelon.contains({col[p]: c for p, c in part.items()}):
                inside = False
        if not inside:
            return {gq.dq.format_path(p): c for p, c in combo.items()}
    return None


# -- Koszul dual ------------------------------------------------------------


def psi(dq: DoubleQuiver, g: int, h: int) -> tuple[int, int] | None:
    """Psi(γ ⊗ γ') as (vertex, coefficient), or None when it vanishes."""
    a, b = dq.arrows[g], dq.arrows[h]
    if a.original != b.original or a.dual == b.dual:
        return None
    if not a.dual:
        return a.source, 1
    return b.target, -1


@dataclass
class KoszulDual:
    """Pi^! on the basis e_1..e_n, arrows of the double, z_1..z_n."""

    dq: DoubleQuiver
    basis: tuple[str, ...]
    degree: dict[str, int]
    table: dict[tuple[str, str], dict[str, int]]

    def multiply(self, x: dict[str, int], y: dict[str, int]) -> dict[str, int]:
        out: dict[str, int] = defaultdict(int)
        for bx, cx in x.items():
            for by, cy in y.items():
                for bz, cz in self.table.get((bx, by), {}).items():
                    out[bz] += cx * cy * cz
        return {k: v for k, v in out.items() if v}

    def product(self, x: str, y: str) -> dict[str, int]:
        return dict(self.table.get((x, y), {}))

    def check_associativity(self) -> int:
        """Number of basis triples checked; raises on the first failure."""
        count = 0
        for x, y, z in product(self.basis, repeat=3):
            count += 1
            xy, yz = self.table.get((x, y)), self.table.get((y, z))
            if not xy and not yz:
                continue  # both sides vanish
            left = self.multiply(xy or {}, {z: 1})
            right = self.multiply({x: 1}, yz or {})
            if left != right:
                raise AssociativityViolation(f"({x}·{y})·{z} = {left} but {x}·({y}·{z}) = {right}")
        return count

    def graded_dims(self) -> list[Matrix]:
        n = self.dq.n
        deg1 = self.dq.adjacency()
        return [la.identity(n), deg1, la.identity(n)]

    def to_json(self) -> dict:
        return {
            "basis": [{"name": b, "degree": self.degree[b]} for b in self.basis],
            "products": [
                {"left": x, "right": y, "value": dict(sorted(v.items()))}
                for (x, y), v in sorted(self.table.items(), key=lambda kv: (self.basis.index(kv[0][0]), self.basis.index(kv[0][1])))
            ],
        }


def koszul_dual_table(q: Quiver) -> KoszulDual:
    dq = double_quiver(q)
    n = dq.n
    es = [f"e{i + 1}" for i in range(n)]
    zs = [f"z{i + 1}" for i in range(n)]
    arrows = [a.label for a in dq.arrows]
    basis = tuple(es + arrows + zs)
    degree = {b: 0 for b in es} | {b: 1 for b in arrows} | {b: 2 for b in zs}
    table: dict[tuple[str, str], dict[str, int]] = {}
    for i in range(n):
        table[(es[i], es[i])] = {es[i]: 1}
        table[(es[i], zs[i])] = {zs[i]: 1}
        table[(zs[i], es[i])] = {zs[i]: 1}
    for a in dq.arrows:
        table[(es[a.source], a.label)] = {a.label: 1}
        table[(a.label, es[a.target])] = {a.label: 1}
    for g, h in product(range(len(dq.arrows)), repeat=2):
        val = psi(dq, g, h)
        if val is not None:
            v, c = val
            table[(dq.arrows[g].label, dq.arrows[h].label)] = {zs[v]: c}
    kd = KoszulDual(dq, basis, degree, table)
    kd.check_associativity()
    return kd


@dataclass
class Degree3Report:
    passed: bool
    pairs: int
    kernel_dim: int
    degree3_paths: int
    span_rank: int


def quadratic_dual_degree3_check(q: Quiver) -> Degree3Report:
    """Ker Psi is spanned correctly and generates every length-3 path.

    Needs non-Dynkin input; Dynkin quivers raise :class:`DynkinNotSupported`.
    """
    cd = build_cartan(q.to_valued())
    if cd.classification.is_dynkin:
        raise DynkinNotSupported(f"{cd.classification}: the degree-3 vanishing needs non-Dynkin input")
    dq = double_quiver(q)
    pi = PathIndex(dq)
    n = dq.n
    pairs = [(v, p) for v in range(n) for p in pi.paths_from(v, 2)]
    by_block = defaultdict(list)
    for v, p in pairs:
        by_block[(v, pi.end(v, p))].append(p)
    kernel: list[tuple[int, int, dict[Path, int]]] = []
    images = set()
    for (v, w), block in sorted(by_block.items()):
        rows = defaultdict(dict)
        for k, p in enumerate(block):
            val = psi(dq, p[0], p[1])
            if val is not None:
                rows[val[0]][k] = val[1]
                images.add(val[0])
        for vec in la.nullspace(list(rows.values()), len(block)):
            kernel.append((v, w, {block[k]: c for k, c in enumerate(vec) if c}))
    if images != set(range(n)):
        missing = sorted(set(range(n)) - images)
        raise SurjectivityFailure(f"Psi misses e_v for vertices {[m + 1 for m in missing]}")
    if len(kernel) != len(pairs) - n:
        raise SurjectivityFailure(f"dim Ker Psi = {len(kernel)}, expected {len(pairs) - n}")
    triples = [(v, p) for v in range(n) for p in pi.paths_from(v, 3)]
    column = {t: k for k, t in enumerate(triples)}
    ech = SparseEchelon()
    for v, w, vec in kernel:
        for g, a in enumerate(dq.arrows):
            if a.target == v:
                ech.add({column[(a.source, (g,) + p)]: c for p, c in vec.items()})
            if a.source == w:
                ech.add({column[(v, p + (g,))]: c for p, c in vec.items()})
    if ech.rank != len(triples):
        witness = next(t for t in triples if not ech.contains({column[t]: 1}))
        raise Degree3Residual(
            f"span of M⊗Ker Psi + Ker Psi⊗M has rank {ech.rank} < {len(triples)}",
            dq.format_path(witness[1]),
        )
    return Degree3Report(True, len(pairs), len(kernel), len(triples), ech.rank)


# -- orientation ------------------------------------------------------------


@dataclass
class OrientationReport:
    passed: bool
    max_degree: int
    first_difference: tuple[int, int, int] | None = None


def orientation_invariance_check(q: Quiver, flip: Sequence[str], max_degree: int) -> OrientationReport:
    base = oracle_table(q, max_degree)
    other = oracle_table(q.flipped(flip), max_degree)
    for r, (m1, m2) in enumerate(zip(base.matrices, other.matrices)):
        for i in range(q.n):
            for j in range(q.n):
                if m1[i][j] != m2[i][j]:
                    return OrientationReport(False, max_degree, (r, i + 1, j + 1))
    return OrientationReport(True, max_degree)
