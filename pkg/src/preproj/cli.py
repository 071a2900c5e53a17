"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog
from .errors import InputError, PreprojError, VerificationError
from .hilbert import graded_dim_table, hilbert_polynomial_dynkin, socle_matrix
from .inputs import load_problem
from .pathalg import GradedQuotient, double_quiver, koszul_dual_table
from .verify import CLOSED_FORM_DEGREE, ORACLE_DEGREE, verify_many
from .weyl import coxeter_element, coxeter_orbits, enumerate_roots, nakayama_permutation


class UsageError(InputError):
    pass


def parse_field(text: str) -> int | None:
    """``exact`` -> None, ``prime:P`` -> P."""
    if text == "exact":
        return None
    if text.startswith("prime:"):
        try:
            p = int(text.split(":", 1)[1])
        except ValueError:
            p = 0
        if p >= 2 and all(p % k for k in range(2, int(p**0.5) + 1)):
            return p
    raise UsageError(f"--field must be 'exact' or 'prime:P' with P prime, got {text!r}")


def _matrix_lines(m) -> list[str]:
    width = max((len(str(x)) for row in m for x in row), default=1)
    return ["  [" + " ".join(str(x).rjust(width) for x in row) + "]" for row in m]


def _vec(v) -> list[int]:
    return list(v)


def _emit(args, payload, text: str | None = None, csv_text: str | None = None):
    if args.format == "json":
        out = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        if csv_text is None:
            raise UsageError(f"csv output is not available for `{args.command}`")
        out = csv_text
    else:
        out = text if text is not None else json.dumps(payload, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def cmd_catalog(args):
    names = catalog.names()
    _emit(args, names, "\n".join(names) + "\n", "name\n" + "\n".join(names) + "\n")
    return 0


def cmd_classify(args):
    prob = load_problem(args.input)
    cd = prob.datum
    payload = {
        "input": prob.name,
        "n": cd.n,
        "d": list(cd.d),
        "classification": str(cd.classification),
        "kind": cd.classification.kind,
        "dynkin_type": cd.classification.dynkin_type,
    }
    for key in ("D", "R", "B", "Bbar", "C", "E"):
        payload[key] = [list(r) for r in getattr(cd, key)]
    lines = [f"input: {prob.name}", f"classification: {cd.classification}"]
    if cd.classification.is_dynkin:
        h = coxeter_element(cd).order
        payload["h"] = h
        lines.append(f"Coxeter number h = {h}")
    for key in ("D", "R", "B", "Bbar", "C", "E"):
        lines.append(f"{key} =")
        lines.extend(_matrix_lines(getattr(cd, key)))
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


def _table_text(table, title: str) -> list[str]:
    lines = [title]
    for r, m in enumerate(table.matrices):
        lines.append(f"degree {r}:")
        lines.extend(_matrix_lines(m))
    lines.append(f"total dim = {table.total_dimension()}")
    return lines


def cmd_hilbert(args):
    prob = load_problem(args.input)
    cd = prob.datum
    status = 0
    if cd.classification.is_dynkin:
        cox = coxeter_element(cd)
        h = cox.order
        table = graded_dim_table(cd, args.max_degree, h)
        tau = nakayama_permutation(cd, None, cox)
        socle = socle_matrix(cd, h, tau.rho)
        rep = hilbert_polynomial_dynkin(cd, socle, h)
        identity = {"h": h, "passed": rep.passed, "socle": [list(r) for r in socle], "failure": rep.failure}
        status = 0 if rep.passed else 1
    else:
        table = graded_dim_table(cd, CLOSED_FORM_DEGREE if args.max_degree is None else args.max_degree)
        identity = None
    payload = {"input": prob.name, "classification": str(cd.classification)} | table.to_json()
    payload["total_dim"] = table.total_dimension()
    lines = _table_text(table, f"{prob.name}: {cd.classification}")
    if identity is not None:
        payload["hilbert_identity"] = identity
        verdict = "holds" if identity["passed"] else f"FAILS at {identity['failure']}"
        lines.append(f"H(t)(1 - Bbar t + t^2) = D + socle t^{identity['h']}: {verdict}")
    _emit(args, payload, "\n".join(lines) + "\n", table.to_csv())
    return status


def cmd_oracle(args):
    prob = load_problem(args.input)
    if prob.quiver is None:
        raise InputError(f"{prob.name}: the path-algebra oracle needs a simply-laced input")
    top = ORACLE_DEGREE if args.max_degree is None else args.max_degree
    gq = GradedQuotient(double_quiver(prob.quiver), max_degree=max(top, ORACLE_DEGREE), prime=args.prime)
    table = gq.table(top)
    payload = {"input": prob.name} | table.to_json()
    payload["total_dim"] = table.total_dimension()
    _emit(args, payload, "\n".join(_table_text(table, f"{prob.name}: oracle")) + "\n", table.to_csv())
    return 0


def cmd_roots(args):
    prob = load_problem(args.input)
    roots = enumerate_roots(prob.datum, args.depth)
    payload = {"input": prob.name, "count": len(roots), "truncated": roots.truncated, "roots": [_vec(r) for r in roots.roots]}
    lines = [f"{prob.name}: {len(roots)} roots" + (" (truncated)" if roots.truncated else "")]
    lines += ["  " + " ".join(str(x) for x in r) for r in roots.roots]
    csv_text = "index," + ",".join(f"x{i + 1}" for i in range(prob.datum.n)) + "\n"
    csv_text += "".join(f"{k}," + ",".join(map(str, r)) + "\n" for k, r in enumerate(roots.roots))
    _emit(args, payload, "\n".join(lines) + "\n", csv_text)
    return 0


def cmd_coxeter(args):
    prob = load_problem(args.input)
    cd = prob.datum
    cox = coxeter_element(cd, cap=args.cap)
    roots = enumerate_roots(cd, args.depth)
    payload = {
        "input": prob.name,
        "h": cox.order,
        "admissible_order": [v + 1 for v in cox.admissible_order],
        "cox": [list(r) for r in cox.cox],
        "cox_inv": [list(r) for r in cox.cox_inv],
        "roots": len(roots),
    }
    lines = [f"{prob.name}: h = {cox.order}, {len(roots)} roots", "Coxeter element ="]
    lines += _matrix_lines(cox.cox)
    csv_rows = ["orbit,position," + ",".join(f"x{i + 1}" for i in range(cd.n))]
    if cd.classification.is_dynkin:
        orbits = coxeter_orbits(cd, cox, roots)
        tau = nakayama_permutation(cd, None, cox, len(roots))
        payload["orbits"] = [[_vec(r) for r in o] for o in orbits]
        payload["m"] = list(tau.m)
        payload["rho"] = [r + 1 for r in tau.rho]
        lines.append(f"{len(orbits)} orbits of size {cox.order}")
        for k, o in enumerate(orbits):
            lines.append(f"  orbit {k + 1}: " + "  ".join("(" + ",".join(map(str, r)) + ")" for r in o))
            csv_rows += [f"{k + 1},{t}," + ",".join(map(str, r)) for t, r in enumerate(o)]
        lines.append("m = " + " ".join(map(str, tau.m)))
        lines.append("rho = " + " ".join(f"{i + 1}->{r + 1}" for i, r in enumerate(tau.rho)))
    _emit(args, payload, "\n".join(lines) + "\n", "\n".join(csv_rows) + "\n")
    return 0


def cmd_koszul(args):
    prob = load_problem(args.input)
    if prob.quiver is None:
        raise InputError(f"{prob.name}: the Koszul dual table needs a simply-laced input")
    kd = koszul_dual_table(prob.quiver)
    payload = {"input": prob.name, "dimension": len(kd.basis)} | kd.to_json()
    lines = [f"{prob.name}: Koszul dual, dimension {len(kd.basis)} (associativity checked)"]
    for (x, y), v in sorted(kd.table.items()):
        if kd.degree[x] == 1 and kd.degree[y] == 1:
            val = " + ".join(f"{c}*{b}" for b, c in sorted(v.items()))
            lines.append(f"  {x} · {y} = {val}")
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


def _parse_pair(text: str) -> tuple[int, int]:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--perturb-bbar expects I,J (1-based), got {text!r}")
    if i == j:
        raise UsageError("--perturb-bbar needs an off-diagonal position")
    return i - 1, j - 1


def cmd_verify(args):
    if args.prime is not None:
        raise UsageError("verify runs in exact mode only; --field prime is refused")
    refs = catalog.names() if args.input == "all" else [args.input]
    for ref in refs:
        load_problem(ref)  # input errors surface before any work starts
    perturb = _parse_pair(args.perturb_bbar) if args.perturb_bbar else None
    if perturb is not None:
        n = load_problem(refs[0]).datum.n
        if len(refs) != 1 or not all(0 <= k < n for k in perturb):
            raise UsageError("--perturb-bbar applies to a single input and positions within 1..n")
    top = ORACLE_DEGREE if args.max_degree is None else args.max_degree
    reports = verify_many(refs, top, perturb, args.jobs)
    failed = [(r["input"], c["name"]) for r in reports for c in r["checks"] if c["status"] == "fail"]
    payload = reports if args.input == "all" else reports[0]
    lines = []
    for r in reports:
        bad = [c["name"] for c in r["checks"] if c["status"] == "fail"]
        lines.append(f"{r['input']}: {'FAIL ' + ', '.join(bad) if bad else 'ok'} ({len(r['checks'])} checks)")
    _emit(args, payload, "\n".join(lines) + "\n")
    if failed:
        name, check = failed[0]
        print(f"verification failed: {name}: {check}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="preproj", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="table")
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--field", default="exact", help="exact (default) or prime:P")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, needs_input=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if needs_input:
            p.add_argument("input", help="JSON input file or catalog name")
        p.set_defaults(func=fn)
        return p

    add("catalog", cmd_catalog, "list built-in inputs", needs_input=False)
    add("classify", cmd_classify, "Cartan matrices and classification")
    p = add("hilbert", cmd_hilbert, "closed-form graded dimensions")
    p.add_argument("--max-degree", type=int)
    p = add("oracle", cmd_oracle, "graded dimensions from the path-algebra model")
    p.add_argument("--max-degree", type=int)
    p = add("roots", cmd_roots, "root system")
    p.add_argument("--depth", type=int, help="reflection-word limit (needed for non-Dynkin input)")
    p = add("coxeter", cmd_coxeter, "Coxeter element, orbits and Nakayama permutation")
    p.add_argument("--depth", type=int)
    p.add_argument("--cap", type=int, default=10000, help="iteration cap for the Coxeter number")
    add("koszul", cmd_koszul, "multiplication table of the Koszul dual")
    p = add("verify", cmd_verify, "run every cross-check ('all' for the whole catalog)")
    p.add_argument("--max-degree", type=int, help=f"oracle degree (default {ORACLE_DEGREE})")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--perturb-bbar", metavar="I,J", help="add 1 to Bbar[I][J] (negative control)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "max_degree", None) is not None and args.max_degree < 0:
            raise UsageError("--max-degree must be non-negative")
        args.prime = parse_field(args.field)
        return args.func(args)
    except VerificationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (InputError, PreprojError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
