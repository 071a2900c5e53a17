"""Built-in inputs, stored in the same JSON shape the CLI reads from files."""

from __future__ import annotations

from .cartan import _matrices, standard_quiver

DYNKIN_TYPES = (
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8",
    "B2", "B3", "B4", "C3", "D4", "D5", "D6",
    "E6", "E7", "E8", "F4", "G2",
)


def _cartan_entry(name: str) -> dict:
    C = _matrices(standard_quiver(name))[4]
    return {"cartan": {"C": [list(row) for row in C]}}


def _quiver_entry(n: int, arrows: list[tuple[int, int]], flip: list[str] | None = None) -> dict:
    entry = {
        "quiver": {
            "d": [1] * n,
            "arrows": [{"from": i, "to": j, "weight": 1} for i, j in arrows],
        }
    }
    if flip is not None:
        entry["flip"] = flip
    return entry


QUIVERS = {
    "A2-quiver": _quiver_entry(2, [(1, 2)], flip=["a1"]),
    "A3-quiver": _quiver_entry(3, [(1, 2), (2, 3)]),
    "D4-quiver": _quiver_entry(4, [(1, 2), (3, 2), (4, 2)]),
    "kronecker": _quiver_entry(2, [(1, 2), (1, 2)], flip=["a2"]),
    "affine-A2": _quiver_entry(3, [(1, 2), (2, 3), (1, 3)], flip=["a2"]),
    "affine-D4": _quiver_entry(5, [(2, 1), (3, 1), (4, 1), (5, 1)]),
    "kronecker-3": _quiver_entry(2, [(1, 2), (1, 2), (1, 2)]),
    "jordan": _quiver_entry(1, [(1, 1)]),
}

CATALOG: dict[str, dict] = {name: _cartan_entry(name) for name in DYNKIN_TYPES} | QUIVERS


def names() -> list[str]:
    return list(CATALOG)


def lookup(name: str) -> dict | None:
    entry = CATALOG.get(name)
    if entry is None:
        folded = {k.lower(): k for k in CATALOG}
        key = folded.get(name.lower())
        entry = CATALOG[key] if key else None
    return entry
