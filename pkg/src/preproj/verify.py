"""Cross-verification driver.

Each problem gets a list of named checks with status ``pass``, ``fail`` or
``skipped``.  The Dynkin identities come first so a corrupted Bbar is
reported as ``vieta-truncation``.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from . import linalg as la
from .cartan import CartanDatum
from .errors import PreprojError
from .hilbert import (
    graded_dim_table,
    hilbert_polynomial_dynkin,
    recursion_residual,
    sincerity_check,
    socle_placement,
    vieta_matrix,
)
from .inputs import Problem, load_problem
from .pathalg import (
    GradedQuotient,
    double_quiver,
    koszul_dual_table,
    orientation_invariance_check,
    quadratic_dual_degree3_check,
    socle_injectivity_check,
)
from .weyl import (
    CoxeterData,
    RootSystem,
    TauOrbitData,
    coxeter_element,
    coxeter_orbits,
    enumerate_roots,
    nakayama_permutation,
)

CLOSED_FORM_DEGREE = 12
ORACLE_DEGREE = 8
ORIENTATION_DEGREE = 4


class Report:
    def __init__(self, name: str):
        self.name = name
        self.checks: list[dict] = []

    def add(self, name: str, ok: bool | None, details=None):
        status = "skipped" if ok is None else "pass" if ok else "fail"
        self.checks.append({"name": name, "status": status, "details": details})

    def run(self, name: str, fn: Callable[[], tuple[bool | None, object]]):
        try:
            ok, details = fn()
        except PreprojError as exc:
            ok, details = False, f"{type(exc).__name__}: {exc}"
        self.add(name, ok, details)

    @property
    def passed(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)

    @property
    def first_failure(self) -> str | None:
        return next((c["name"] for c in self.checks if c["status"] == "fail"), None)

    def to_json(self) -> dict:
        return {"input": self.name, "checks": self.checks}


def perturb_bbar(cd: CartanDatum, i: int, j: int, delta: int = 1) -> CartanDatum:
    """Copy of ``cd`` with Bbar[i][j] shifted; C and the quiver are untouched."""
    rows = [list(r) for r in cd.Bbar]
    rows[i][j] += delta
    return dataclasses.replace(cd, Bbar=la.freeze(rows))


def _cartan_invariants(cd: CartanDatum):
    n = cd.n
    problems = []
    if not la.is_symmetric(cd.B):
        problems.append("B not symmetric")
    if la.matmul(cd.D, cd.Bbar) != cd.B:
        problems.append("D*Bbar != B")
    if any(x < 0 for row in cd.Bbar for x in row):
        problems.append("Bbar has negative entries")
    if la.sub(la.identity(n, 2), cd.Bbar) != cd.C:
        problems.append("C != 2I - Bbar")
    if not la.is_symmetric(la.matmul(cd.D, cd.C)):
        problems.append("D*C not symmetric")
    if la.add(cd.E, la.transpose(cd.E)) != la.sub(la.scale(cd.D, 2), cd.B):
        problems.append("E + E^T != 2D - B")
    return not problems, problems or None


@dataclasses.dataclass(frozen=True)
class DynkinStructure:
    """Everything the Dynkin checks need that does not depend on Bbar."""

    cox: CoxeterData
    roots: RootSystem
    tau: TauOrbitData
    placement: la.Matrix
    orbits: tuple | None  # None when the partition failed; see orbit_error
    orbit_error: str | None = None

    @property
    def h(self) -> int:
        return self.cox.order


def dynkin_structure(cd: CartanDatum) -> DynkinStructure:
    cox = coxeter_element(cd)
    tau = nakayama_permutation(cd, None, cox)
    roots = enumerate_roots(cd)
    try:
        orbits, error = tuple(coxeter_orbits(cd, cox, roots)), None
    except PreprojError as exc:
        orbits, error = None, f"{type(exc).__name__}: {exc}"
    return DynkinStructure(cox, roots, tau, socle_placement(cd, tau.rho), orbits, error)


def dynkin_checks(report: Report, cd: CartanDatum, Bbar=None, structure: DynkinStructure | None = None):
    """Dynkin identities; ``Bbar`` overrides the datum's Bbar when given."""
    Bbar = cd.Bbar if Bbar is None else Bbar
    st = structure or dynkin_structure(cd)
    n = cd.n
    h, roots, tau, placement = st.h, st.roots, st.tau, st.placement

    report.run("vieta-truncation", lambda: (la.is_zero(vieta_matrix(Bbar, h - 1)), {"h": h}))
    report.run(
        "socle",
        lambda: (la.matmul(cd.D, vieta_matrix(Bbar, h - 2)) == placement, {"socle": [list(r) for r in placement]}),
    )

    def hilbert():
        rep = hilbert_polynomial_dynkin(cd, placement, h, Bbar)
        return rep.passed, rep.failure

    report.run("hilbert-polynomial", hilbert)
    report.run("root-count", lambda: (len(roots) == n * h, {"roots": len(roots), "n": n, "h": h}))
    report.run("coxeter-number", lambda: (len(roots) % n == 0 and len(roots) // n == h, {"matrix_order": h}))

    def orbits():
        if st.orbits is None:
            return False, st.orbit_error
        return True, {"orbits": len(st.orbits), "size": h}

    report.run("coxeter-orbits", orbits)
    rho = tau.rho
    report.run(
        "nakayama-involution",
        lambda: (all(rho[rho[i]] == i for i in range(n)), {"rho": [r + 1 for r in rho]}),
    )
    report.run("tau-orbit-sum", lambda: (2 * sum(tau.m) == len(roots), {"m": list(tau.m)}))
    walked = sorted(v for w in tau.walk for v in w)
    report.run("positive-root-walk", lambda: (walked == sorted(roots.positive), None))
    return h


def run_checks(
    problem: Problem,
    oracle_degree: int = ORACLE_DEGREE,
    closed_degree: int = CLOSED_FORM_DEGREE,
    perturb: tuple[int, int] | None = None,
) -> Report:
    cd = problem.datum
    report = Report(problem.name)
    Bbar = cd.Bbar
    if perturb is not None:
        Bbar = perturb_bbar(cd, *perturb).Bbar
    dynkin = cd.classification.is_dynkin
    report.add("classification", True, str(cd.classification))
    h = None
    if dynkin:
        try:
            h = dynkin_checks(report, cd, Bbar)
        except PreprojError as exc:
            report.add("dynkin-structure", False, f"{type(exc).__name__}: {exc}")
    report.run("cartan-invariants", lambda: _cartan_invariants(cd))

    # below the socle cut-off in the Dynkin case, up to closed_degree otherwise
    top = h - 2 if h else closed_degree
    closed = [la.matmul(cd.D, vieta_matrix(Bbar, r)) for r in range(top + 1)]
    report.run("symmetry", lambda: (all(la.is_symmetric(m) for m in closed), {"max_degree": top}))
    report.run(
        "nonnegativity",
        lambda: (all(x >= 0 for m in closed for row in m for x in row), {"max_degree": top}),
    )

    def sincerity():
        table = graded_dim_table(cd, closed_degree, h) if perturb is None else None
        if table is None:
            return None, "skipped for perturbed input"
        rep = sincerity_check(table, cd.classification)
        return rep.passed, {"violations": rep.violations, "warnings": rep.warnings}

    report.run("sincerity", sincerity)

    if problem.quiver is not None:
        _oracle_checks(report, problem, cd, Bbar, dynkin, h, oracle_degree)
    else:
        report.add("oracle-equivalence", None, "not simply-laced")
    return report


def _oracle_checks(report, problem, cd, Bbar, dynkin, h, oracle_degree):
    q = problem.quiver
    dq = double_quiver(q)
    top = min(oracle_degree, h + 1) if dynkin else oracle_degree
    gq = GradedQuotient(dq, max_degree=top + 1)
    dims = [gq.dims(r) for r in range(top + 1)]

    def equivalence():
        for r, got in enumerate(dims):
            if dynkin and r > h - 2:
                want = la.zeros(cd.n)
            else:
                want = la.matmul(cd.D, vieta_matrix(Bbar, r))
            if got != want:
                return False, {"degree": r, "oracle": [list(x) for x in got], "closed_form": [list(x) for x in want]}
        return True, {"max_degree": top}

    report.run("oracle-equivalence", equivalence)
    report.run("oracle-symmetry", lambda: (all(la.is_symmetric(m) for m in dims), None))
    if not dynkin:
        residual = recursion_residual(dims, cd.Bbar)
        report.run("oracle-recursion", lambda: (not residual, {"residual": residual}))
    inj_top = min(h - 3, top - 1) if dynkin else top - 1

    def injectivity():
        for r in range(inj_top + 1):
            socle_injectivity_check(dq, r=r, quotient=gq)
        return True, {"degrees": inj_top + 1}

    report.run("socle-injectivity", injectivity)

    def koszul():
        kd = koszul_dual_table(q)
        return True, {"basis": len(kd.basis)}

    report.run("koszul-associativity", koszul)
    if dynkin:
        report.add("koszul-degree3", None, "Dynkin input")
    else:
        report.run("koszul-degree3", lambda: (quadratic_dual_degree3_check(q).passed, None))

    if not q.arrows:
        report.add("orientation-invariance", None, "no arrows to flip")
        return
    flip = problem.flip or (q.arrows[0].label,)
    deg = min(ORIENTATION_DEGREE, top)

    def orientation():
        rep = orientation_invariance_check(q, flip, deg)
        return rep.passed, {"flip": list(flip), "max_degree": deg, "first_difference": rep.first_difference}

    report.run("orientation-invariance", orientation)


def _verify_one(args) -> dict:
    ref, oracle_degree, perturb = args
    rep = run_checks(load_problem(ref), oracle_degree, perturb=perturb)
    return rep.to_json()


def verify_many(refs: list[str], oracle_degree: int = ORACLE_DEGREE, perturb=None, jobs: int = 1) -> list[dict]:
    """Reports in input order, whatever order the workers finish in."""
    work = [(r, oracle_degree, perturb) for r in refs]
    if jobs <= 1:
        return [_verify_one(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_one, work))
