"""Reading problem inputs (JSON files or catalog names)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from . import catalog
from .cartan import CartanDatum, ValuedQuiver, build_cartan, from_cartan_matrix
from .errors import InputError
from .pathalg import Arrow, Quiver


@dataclass(frozen=True)
class Problem:
    name: str
    datum: CartanDatum
    quiver: Quiver | None = None  # set when the path-algebra model applies
    flip: tuple[str, ...] = ()


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    return value


def _int_matrix(value, where: str) -> list[list[int]]:
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise InputError(f"{where}: expected a list of integer rows")
    return [[_int(x, f"{where}[{i + 1}][{j + 1}]") for j, x in enumerate(row)] for i, row in enumerate(value)]


def problem_from_json(doc, name: str = "input") -> Problem:
    if not isinstance(doc, dict):
        raise InputError("top level must be a JSON object")
    flip = tuple(str(x) for x in doc.get("flip", ()))
    if "quiver" in doc:
        body = doc["quiver"]
        if not isinstance(body, dict):
            raise InputError("'quiver' must be an object")
        d = body.get("d")
        if not isinstance(d, list) or not d:
            raise InputError("quiver.d must be a non-empty list of positive integers")
        d = [_int(x, f"quiver.d[{k + 1}]") for k, x in enumerate(d)]
        raw = body.get("arrows", [])
        if not isinstance(raw, list):
            raise InputError("quiver.arrows must be a list")
        n = len(d)
        arrows = []
        for k, a in enumerate(raw):
            where = f"quiver.arrows[{k + 1}]"
            if not isinstance(a, dict) or "from" not in a or "to" not in a:
                raise InputError(f"{where}: needs 'from' and 'to'")
            i, j = _int(a["from"], where + ".from"), _int(a["to"], where + ".to")
            w = _int(a.get("weight", 1), where + ".weight")
            if not (1 <= i <= n and 1 <= j <= n):
                raise InputError(f"{where}: vertices must lie in 1..{n}")
            arrows.append((i - 1, j - 1, w, a.get("label")))
        vq = ValuedQuiver.create(d, [(i, j, w) for i, j, w, _ in arrows])
        cd = build_cartan(vq)
        quiver = None
        if vq.is_simply_laced():
            expanded, count = [], 0
            for i, j, w, label in arrows:
                for c in range(w):
                    count += 1
                    lab = str(label) if label is not None and w == 1 else f"a{count}"
                    expanded.append(Arrow(lab, i, j))
            quiver = Quiver(n, tuple(expanded))
        return Problem(name, cd, quiver, flip)
    if "cartan" in doc:
        body = doc["cartan"]
        if not isinstance(body, dict) or "C" not in body:
            raise InputError("'cartan' must be an object with a 'C' matrix")
        C = _int_matrix(body["C"], "cartan.C")
        sym = body.get("symmetrizer")
        if sym is not None:
            if not isinstance(sym, list):
                raise InputError("cartan.symmetrizer must be a list")
            sym = [_int(x, f"cartan.symmetrizer[{k + 1}]") for k, x in enumerate(sym)]
        cd = from_cartan_matrix(C, sym)
        quiver = Quiver.from_valued(cd.quiver) if cd.quiver.is_simply_laced() else None
        return Problem(name, cd, quiver, flip)
    raise InputError("input must contain a 'quiver' or a 'cartan' object")


def load_problem(ref: str) -> Problem:
    """A path to a JSON file, or a catalog name."""
    path = Path(ref)
    if path.is_file():
        text = path.read_text(encoding="utf-8")
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{ref}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        return problem_from_json(doc, path.stem)
    entry = catalog.lookup(ref)
    if entry is None:
        raise InputError(f"{ref!r} is neither a readable file nor a catalog entry (see `preproj catalog`)")
    key = next(k for k in catalog.CATALOG if k.lower() == ref.lower())
    return problem_from_json(entry, key)
