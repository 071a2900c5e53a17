import itertools

import pytest
import sympy

from preproj import errors
from preproj import linalg as la
from preproj.cartan import build_cartan
from preproj.hilbert import vieta_matrix
from preproj.pathalg import (
    Arrow,
    GradedQuotient,
    Quiver,
    double_quiver,
    graded_component_dims,
    koszul_dual_table,
    oracle_table,
    orientation_invariance_check,
    preprojective_relations,
    psi,
    quadratic_dual_degree3_check,
    socle_injectivity_check,
)

A2 = Quiver.from_edges(2, [(0, 1)])
A3 = Quiver.from_edges(3, [(0, 1), (1, 2)])
D4 = Quiver.from_edges(4, [(0, 1), (2, 1), (3, 1)])
KRONECKER = Quiver.from_edges(2, [(0, 1), (0, 1)])
KRONECKER3 = Quiver.from_edges(2, [(0, 1), (0, 1), (0, 1)])
AFFINE_A2 = Quiver.from_edges(3, [(0, 1), (1, 2), (0, 2)])
AFFINE_D4 = Quiver.from_edges(5, [(1, 0), (2, 0), (3, 0), (4, 0)])
JORDAN = Quiver.from_edges(1, [(0, 0)])


def naive_dims(q, r):
    """Dense, self-contained model of kQ̄/<c> in degree r, ranked by sympy."""
    arrows = []
    for a in q.arrows:
        arrows += [(a.label, a.source, a.target), (a.label + "*", a.target, a.source)]

    def paths(start, length):
        out = [((), start)]
        for _ in range(length):
            out = [(p + (lab,), t) for p, end in out for lab, s, t in arrows if s == end]
        return out

    rel = {v: {} for v in range(q.n)}
    for a in q.arrows:
        rel[a.source][(a.label, a.label + "*")] = rel[a.source].get((a.label, a.label + "*"), 0) + 1
        rel[a.target][(a.label + "*", a.label)] = rel[a.target].get((a.label + "*", a.label), 0) - 1
    dims = [[0] * q.n for _ in range(q.n)]
    for i in range(q.n):
        full = paths(i, r)
        for j in range(q.n):
            cols = {p: k for k, (p, end) in enumerate(p for p in full if p[1] == j)}
            rows = []
            for left in range(r - 1):
                for p, v in paths(i, left):
                    for qq, end in paths(v, r - 2 - left):
                        if end != j:
                            continue
                        row = [0] * len(cols)
                        for mid, c in rel[v].items():
                            row[cols[p + mid + qq]] += c
                        rows.append(row)
            rank = sympy.Matrix(rows).rank() if rows and cols else 0
            dims[i][j] = len(cols) - rank
    return la.freeze(dims)


def test_double_quiver():
    dq = double_quiver(KRONECKER)
    assert [a.label for a in dq.arrows] == ["a1", "a1*", "a2", "a2*"]
    assert dq.adjacency() == ((0, 2), (2, 0))
    assert dq.arrows[dq.index("a2*")].source == 1
    assert dq.format_path((0, 1)) == "a1·a1*"
    assert dq.format_path(()) == "e"


def test_relations():
    dq = double_quiver(A2)
    rel = preprojective_relations(dq)
    assert rel.at(0) == (((0, 1), 1),)
    assert rel.at(1) == (((1, 0), -1),)
    jordan = preprojective_relations(double_quiver(JORDAN))
    assert dict(jordan.at(0)) == {(0, 1): 1, (1, 0): -1}


@pytest.mark.parametrize("q", [A2, A3, KRONECKER, AFFINE_A2, JORDAN, D4])
@pytest.mark.parametrize("r", range(5))
def test_oracle_matches_naive_model(q, r):
    assert GradedQuotient(double_quiver(q)).dims(r) == naive_dims(q, r)


def test_kronecker_dims():
    dq = double_quiver(KRONECKER)
    rel = preprojective_relations(dq)
    assert graded_component_dims(dq, rel, 2) == ((3, 0), (0, 3))
    assert graded_component_dims(dq, rel, 3) == ((0, 4), (4, 0))


def test_jordan_is_polynomial_ring():
    table = oracle_table(JORDAN, 8)
    assert [m[0][0] for m in table.matrices] == list(range(1, 10))
    assert table.source == "oracle"


def test_dynkin_vanishing():
    gq = GradedQuotient(double_quiver(A3), max_degree=6)
    assert gq.dims(2) == ((0, 0, 1), (0, 1, 0), (1, 0, 0))
    assert all(la.is_zero(gq.dims(r)) for r in (3, 4, 5))


@pytest.mark.parametrize("q", [KRONECKER, AFFINE_A2, AFFINE_D4, KRONECKER3, D4])
def test_oracle_matches_closed_form(q):
    cd = build_cartan(q.to_valued())
    table = oracle_table(q, 5)
    for r, m in enumerate(table.matrices):
        want = la.matmul(cd.D, vieta_matrix(cd.Bbar, r))
        if cd.classification.is_dynkin and r > 4:
            want = la.zeros(q.n)
        assert m == want


@pytest.mark.parametrize("q", [KRONECKER, AFFINE_A2, D4])
def test_elimination_order_irrelevant(q):
    dq = double_quiver(q)
    fwd = GradedQuotient(dq, max_degree=5)
    rev = GradedQuotient(dq, max_degree=5, reverse_order=True)
    assert all(fwd.dims(r) == rev.dims(r) for r in range(6))


def test_prime_field():
    dq = double_quiver(KRONECKER)
    exact = GradedQuotient(dq, max_degree=5)
    for p in (2, 3, 10007):
        modp = GradedQuotient(dq, max_degree=5, prime=p)
        assert all(modp.dims(r) == exact.dims(r) for r in range(6))
    # char 2 changes nothing for these relations: coefficients are ±1 only
    assert oracle_table(AFFINE_A2, 4, prime=2) == oracle_table(AFFINE_A2, 4)


def test_caps():
    gq = GradedQuotient(double_quiver(KRONECKER3), max_degree=3)
    with pytest.raises(errors.DegreeTooLarge):
        gq.dims(4)
    with pytest.raises(ValueError):
        gq.dims(-1)
    small = GradedQuotient(double_quiver(KRONECKER3), max_degree=8, path_cap=100)
    with pytest.raises(errors.PathCountExceeded):
        small.dims(8)


def test_quiver_validation():
    with pytest.raises(errors.NonCartanEntries):
        Quiver(2, (Arrow("a", 0, 1), Arrow("a", 1, 0)))
    with pytest.raises(errors.NonCartanEntries):
        Quiver(2, (Arrow("a*", 0, 1),))
    with pytest.raises(errors.DisconnectedQuiver):
        Quiver(3, (Arrow("a", 0, 1),))
    with pytest.raises(errors.NonCartanEntries):
        KRONECKER.flipped(["zz"])
    assert Quiver.from_edges(2, [("x", 0, 1)]).arrows == (Arrow("x", 0, 1),)


@pytest.mark.parametrize("q", [KRONECKER, AFFINE_A2, AFFINE_D4, KRONECKER3, JORDAN])
def test_injectivity_non_dynkin(q):
    gq = GradedQuotient(double_quiver(q), max_degree=6)
    for r in range(6):
        rep = socle_injectivity_check(gq.dq, r=r, quotient=gq)
        assert rep.passed and not any(rep.kernel_dims)


def test_injectivity_dynkin_below_socle():
    gq = GradedQuotient(double_quiver(D4), max_degree=6)
    for r in range(4):  # h = 6, socle in degree 4
        assert socle_injectivity_check(gq.dq, r=r, quotient=gq).passed
    with pytest.raises(errors.KernelFound):
        socle_injectivity_check(gq.dq, r=4, quotient=gq)


def test_injectivity_witness():
    with pytest.raises(errors.KernelFound) as info:
        socle_injectivity_check(double_quiver(A2), r=1)
    witness = info.value.witness
    assert witness and set(witness) <= {"a1", "a1*"}


def test_psi():
    dq = double_quiver(A2)
    a, a_star = dq.index("a1"), dq.index("a1*")
    assert psi(dq, a, a_star) == (0, 1)
    assert psi(dq, a_star, a) == (1, -1)
    assert psi(dq, a, a) is None


def test_koszul_a2():
    kd = koszul_dual_table(A2)
    assert kd.basis == ("e1", "e2", "a1", "a1*", "z1", "z2")
    assert kd.product("a1", "a1*") == {"z1": 1}
    assert kd.product("a1*", "a1") == {"z2": -1}
    assert kd.product("a1", "a1") == {}
    assert kd.product("e1", "a1") == {"a1": 1}
    assert kd.product("a1", "e2") == {"a1": 1}
    assert kd.product("a1", "e1") == {}
    assert kd.check_associativity() == 6**3
    assert kd.graded_dims() == [la.identity(2), ((0, 1), (1, 0)), la.identity(2)]


@pytest.mark.parametrize("q", [KRONECKER, JORDAN, AFFINE_A2, D4])
def test_koszul_associative(q):
    kd = koszul_dual_table(q)
    assert kd.check_associativity() == len(kd.basis) ** 3
    for a in q.arrows:
        assert kd.product(a.label, a.label + "*") == {f"z{a.source + 1}": 1}
        assert kd.product(a.label + "*", a.label) == {f"z{a.target + 1}": -1}


def test_koszul_json():
    doc = koszul_dual_table(JORDAN).to_json()
    assert [b["degree"] for b in doc["basis"]] == [0, 1, 1, 2]
    assert {"left": "a1", "right": "a1*", "value": {"z1": 1}} in doc["products"]


@pytest.mark.parametrize(
    "q, numbers",
    [(KRONECKER, (8, 6, 16, 16)), (JORDAN, (4, 3, 8, 8)), (KRONECKER3, (18, 16, 54, 54))],
)
def test_degree3(q, numbers):
    rep = quadratic_dual_degree3_check(q)
    assert rep.passed
    assert (rep.pairs, rep.kernel_dim, rep.degree3_paths, rep.span_rank) == numbers


def test_degree3_refuses_dynkin():
    with pytest.raises(errors.DynkinNotSupported):
        quadratic_dual_degree3_check(A2)


@pytest.mark.parametrize(
    "q, flip",
    [(A2, ["a1"]), (KRONECKER, ["a2"]), (AFFINE_A2, ["a2"]), (AFFINE_A2, ["a1", "a3"]), (D4, ["a2"])],
)
def test_orientation_invariance(q, flip):
    assert orientation_invariance_check(q, flip, 4).passed


def test_every_reorientation_of_affine_d4():
    base = oracle_table(AFFINE_D4, 3)
    labels = [a.label for a in AFFINE_D4.arrows]
    for k in range(len(labels) + 1):
        for flip in itertools.combinations(labels, k):
            assert oracle_table(AFFINE_D4.flipped(flip), 3) == base
