"""Shipped nonabelian p-groups: Q8, D8, M16 and Heis27.

Each table is generated from a normal-form model of the group, validated as
a group table, and cached.  Elements are labelled by normal-form words in
the catalog generators, which are also accepted when parsing elements.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Hashable, Sequence

import numpy as np

from .finite import TableGroup


def _word(parts: Sequence[tuple[str, int]]) -> str:
    text = "".join(g if e == 1 else f"{g}{e}" for g, e in parts if e)
    return text or "e"


def table_from_model(
    elements: Sequence[Hashable],
    op: Callable[[Hashable, Hashable], Hashable],
    labels: Sequence[str],
    name: str,
    generators: dict[str, Hashable],
) -> TableGroup:
    """Tabulate ``op`` over ``elements`` (identity first) and validate the result."""
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[op(a, b)]
    return TableGroup(
        table,
        name=name,
        labels=labels,
        generators={g: index[e] for g, e in generators.items()},
        identity=0,
    )


_QUAT = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


@lru_cache(maxsize=None)
def quaternion() -> TableGroup:
    elements = [(s, b) for b in "1ijk" for s in (1, -1)]

    def op(x, y):
        sign, basis = _QUAT[(x[1], y[1])]
        return (x[0] * y[0] * sign, basis)

    labels = [("" if s == 1 else "-") + b for s, b in elements]
    return table_from_model(elements, op, labels, "Q8",
                            {"i": (1, "i"), "j": (1, "j"), "k": (1, "k")})


@lru_cache(maxsize=None)
def dihedral8() -> TableGroup:
    # r^a s^b with s r s = r^-1
    elements = [(a, b) for b in range(2) for a in range(4)]

    def op(x, y):
        a, b = x
        c, d = y
        return ((a + (c if b == 0 else -c)) % 4, (b + d) % 2)

    labels = [_word([("r", a), ("s", b)]) for a, b in elements]
    return table_from_model(elements, op, labels, "D8", {"r": (1, 0), "s": (0, 1)})


@lru_cache(maxsize=None)
def modular16() -> TableGroup:
    # a^i b^j with a^8 = b^2 = 1 and b a b = a^5
    elements = [(i, j) for j in range(2) for i in range(8)]

    def op(x, y):
        i, j = x
        k, l = y
        return ((i + k * pow(5, j)) % 8, (j + l) % 2)

    labels = [_word([("a", i), ("b", j)]) for i, j in elements]
    return table_from_model(elements, op, labels, "M16", {"a": (1, 0), "b": (0, 1)})


@lru_cache(maxsize=None)
def heisenberg27() -> TableGroup:
    # unitriangular 3x3 matrices over F_3; normal form x^a y^b z^c
    elements = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]

    def to_matrix(w):
        a, b, c = w
        return (a, b, (a * b + c) % 3)

    def from_matrix(m):
        a, b, c = m
        return (a, b, (c - a * b) % 3)

    def op(u, v):
        a, b, c = to_matrix(u)
        d, e, f = to_matrix(v)
        return from_matrix(((a + d) % 3, (b + e) % 3, (c + f + a * e) % 3))

    labels = [_word([("x", a), ("y", b), ("z", c)]) for a, b, c in elements]
    return table_from_model(elements, op, labels, "Heis27",
                            {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)})


CATALOG: dict[str, Callable[[], TableGroup]] = {
    "Q8": quaternion,
    "D8": dihedral8,
    "M16": modular16,
    "Heis27": heisenberg27,
}


def catalog_group(name: str) -> TableGroup:
    return CATALOG[name]()


@lru_cache(maxsize=None)
def symmetric3() -> TableGroup:
    """S3, the smallest non-nilpotent group; kept for rejection tests and demos."""
    from itertools import permutations

    elements = sorted(permutations(range(3)))

    def op(p, q):
        return tuple(p[q[i]] for i in range(3))

    labels = ["".join(map(str, p)) for p in elements]
    return table_from_model(elements, op, labels, "S3", {})
