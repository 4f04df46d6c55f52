"""Slow, obviously-correct reference implementations used only by the tests.

They touch a group only through scalar multiplication, so they share no code
with the vectorised library paths they check.
"""

from __future__ import annotations

from itertools import combinations


def table(group) -> list[list[int]]:
    n = group.order
    return [[int(group.mul(a, b)) for b in range(n)] for a in range(n)]


def powers(tab: list[list[int]], e: int, x: int) -> frozenset[int]:
    out = {e}
    cur = x
    while cur != e:
        out.add(cur)
        cur = tab[cur][x]
    return frozenset(out)


def cyclic_subgroups(tab, e) -> dict[int, frozenset[int]]:
    return {x: powers(tab, e, x) for x in range(len(tab))}


def degrees(tab, e) -> list[int]:
    cyc = cyclic_subgroups(tab, e)
    n = len(tab)
    deg = [0] * n
    for x, y in combinations(range(n), 2):
        if x in cyc[y] or y in cyc[x]:
            deg[x] += 1
            deg[y] += 1
    return deg


def maximal_cyclic(tab, e) -> set[frozenset[int]]:
    subs = set(cyclic_subgroups(tab, e).values())
    return {s for s in subs if not any(s < t for t in subs)}


def min_degree(tab, e) -> tuple[int, set[int]]:
    deg = degrees(tab, e)
    d = min(deg)
    return d, {x for x, v in enumerate(deg) if v == d}


def order(tab, e, x) -> int:
    return len(powers(tab, e, x))


def center(tab) -> set[int]:
    n = len(tab)
    return {z for z in range(n) if all(tab[z][g] == tab[g][z] for g in range(n))}
