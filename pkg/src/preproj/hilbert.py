"""Closed-form graded dimensions of the preprojective algebra.

The degree-r dimension matrix (dim e_i Pi_r e_j) is D * V_r(Bbar), where
V_0 = I, V_1 = Bbar, V_{r+1} = Bbar V_r - V_{r-1}.  In the Dynkin case the
table stops at degree h - 2 and V_{h-1}(Bbar) vanishes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import linalg as la
from .cartan import CartanDatum
from .errors import IdentityViolation, NonDynkinInput, NonDynkinNeedsMaxDegree, SocleMismatch
from .linalg import Matrix


@lru_cache(maxsize=4096)
def _vieta(Bbar: Matrix, r: int) -> Matrix:
    n = len(Bbar)
    if r == 0:
        return la.identity(n)
    if r == 1:
        return Bbar
    return la.sub(la.matmul(Bbar, _vieta(Bbar, r - 1)), _vieta(Bbar, r - 2))


def vieta_matrix(Bbar: Matrix, r: int) -> Matrix:
    if r < 0:
        raise ValueError("degree must be non-negative")
    Bbar = la.freeze(Bbar)
    # fill the cache bottom-up so deep degrees never recurse far
    for k in range(r + 1):
        _vieta(Bbar, k)
    return _vieta(Bbar, r)


@dataclass(frozen=True)
class GradedDimTable:
    matrices: tuple[Matrix, ...]
    dynkin_top: int | None = None
    source: str = "closed-form"

    @property
    def n(self) -> int:
        return len(self.matrices[0])

    def total_dimension(self) -> int:
        return sum(x for m in self.matrices for row in m for x in row)

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "dynkin_top": self.dynkin_top,
            "matrices": [[list(row) for row in m] for m in self.matrices],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["degree", "i", "j", "dim"])
        for r, m in enumerate(self.matrices):
            for i, row in enumerate(m):
                for j, x in enumerate(row):
                    writer.writerow([r, i + 1, j + 1, x])
        return buf.getvalue()

    @classmethod
    def from_json(cls, data: dict | str) -> "GradedDimTable":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            tuple(la.freeze(m) for m in data["matrices"]),
            data.get("dynkin_top"),
            data.get("source", "closed-form"),
        )


def graded_dim_table(cd: CartanDatum, max_degree: int | None = None, h: int | None = None) -> GradedDimTable:
    """D * V_r(Bbar) for r = 0..max_degree.

    Dynkin data are truncated: degrees >= h - 1 are zero, and V_{h-1}(Bbar)
    must vanish.  ``h`` is taken from the Coxeter element when not given.
    """
    dynkin = cd.classification.is_dynkin
    if not dynkin and max_degree is None:
        raise NonDynkinNeedsMaxDegree(f"{cd.classification} Hilbert series is infinite; give max_degree")
    top = None
    if dynkin:
        if h is None:
            from .weyl import coxeter_element

            h = coxeter_element(cd).order
        top = h - 2
        if not la.is_zero(vieta_matrix(cd.Bbar, h - 1)):
            raise IdentityViolation(f"V_{h - 1}(Bbar) is not zero")
        if max_degree is None:
            max_degree = top
    zero = la.zeros(cd.n)
    mats = []
    for r in range(max_degree + 1):
        if top is not None and r > top:
            mats.append(zero)
        else:
            mats.append(la.matmul(cd.D, vieta_matrix(cd.Bbar, r)))
    return GradedDimTable(tuple(mats), top)


def socle_placement(cd: CartanDatum, rho) -> Matrix:
    """Matrix with d_i at (i, rho(i)) and zero elsewhere."""
    n = cd.n
    return la.freeze([[cd.d[i] if j == rho[i] else 0 for j in range(n)] for i in range(n)])


def socle_matrix(cd: CartanDatum, h: int, rho) -> Matrix:
    if not cd.classification.is_dynkin:
        raise NonDynkinInput("the socle matrix is only defined in the Dynkin case")
    top = la.matmul(cd.D, vieta_matrix(cd.Bbar, h - 2))
    expected = socle_placement(cd, rho)
    if top != expected:
        raise SocleMismatch(f"D V_{h - 2}(Bbar) = {top} but the Nakayama permutation predicts {expected}")
    return top


@dataclass
class IdentityReport:
    passed: bool
    h: int
    coefficients: list[Matrix] = field(default_factory=list)
    failure: dict | None = None


def hilbert_product(cd: CartanDatum, h: int, Bbar: Matrix | None = None) -> list[Matrix]:
    """Coefficients of (sum_{r<=h-2} D V_r t^r)(I - Bbar t + t^2), degrees 0..h."""
    Bbar = cd.Bbar if Bbar is None else Bbar
    n = cd.n
    terms = [la.matmul(cd.D, vieta_matrix(Bbar, r)) for r in range(h - 1)]
    coeffs = [la.zeros(n) for _ in range(h + 1)]
    for r, t in enumerate(terms):
        coeffs[r] = la.add(coeffs[r], t)
        coeffs[r + 1] = la.sub(coeffs[r + 1], la.matmul(t, Bbar))
        coeffs[r + 2] = la.add(coeffs[r + 2], t)
    return coeffs


def hilbert_polynomial_dynkin(cd: CartanDatum, socle: Matrix, h: int, Bbar: Matrix | None = None) -> IdentityReport:
    """Check H(t)(1 - Bbar t + t^2) = D + socle t^h coefficientwise.

    Returns the first failing (degree, i, j) in ``failure``.
    """
    if not cd.classification.is_dynkin:
        raise NonDynkinInput("the Hilbert polynomial identity is a Dynkin statement")
    coeffs = hilbert_product(cd, h, Bbar)
    n = cd.n
    for k, got in enumerate(coeffs):
        want = cd.D if k == 0 else socle if k == h else la.zeros(n)
        for i in range(n):
            for j in range(n):
                if got[i][j] != want[i][j]:
                    failure = {"degree": k, "i": i + 1, "j": j + 1, "got": got[i][j], "expected": want[i][j]}
                    return IdentityReport(False, h, coeffs, failure)
    return IdentityReport(True, h, coeffs)


@dataclass
class SincerityReport:
    passed: bool
    violations: list[tuple[int, int]] = field(default_factory=list)
    warnings: list[tuple[int, int]] = field(default_factory=list)


def sincerity_check(table: GradedDimTable, classification) -> SincerityReport:
    """No zero row in any degree below the socle cut-off.

    Violations are (degree, vertex) pairs, vertex 1-based.  Non-Dynkin zero
    rows at degrees 0 and 1 are reported as warnings only.
    """
    dynkin = classification.is_dynkin
    limit = len(table.matrices)
    if dynkin and table.dynkin_top is not None:
        limit = min(limit, table.dynkin_top + 1)
    report = SincerityReport(True)
    for r in range(limit):
        for i, row in enumerate(table.matrices[r]):
            if any(row):
                continue
            if not dynkin and r <= 1:
                report.warnings.append((r, i + 1))
            else:
                report.violations.append((r, i + 1))
    report.passed = not report.violations
    return report


def recursion_residual(matrices: Sequence[Matrix], Bbar: Matrix) -> list[tuple[int, int, int]]:
    """Entries where dims_{r+1} + dims_{r-1} != Bbar^T dims_r, for r >= 1.

    Entrywise this is dim e_i Pi_{r+1} e_j + dim e_i Pi_{r-1} e_j =
    sum_p (b_ip / d_p) dim e_p Pi_r e_j.
    """
    bad = []
    bt = la.transpose(Bbar)
    for r in range(1, len(matrices) - 1):
        lhs = la.add(matrices[r + 1], matrices[r - 1])
        rhs = la.matmul(bt, matrices[r])
        for i, (a, b) in enumerate(zip(lhs, rhs)):
            for j, (x, y) in enumerate(zip(a, b)):
                if x != y:
                    bad.append((r, i + 1, j + 1))
    return bad
