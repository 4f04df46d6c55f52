"""Brute-force power graph oracle.

Vertices are element indices; ``x ~ y`` iff one lies in the cyclic subgroup
generated by the other.  Everything is derived from the cyclic-membership
matrix of the group, so the total cost is ``O(n^2)`` with small constants.
"""

from __future__ import annotations

import os
from typing import TextIO

import numpy as np

from .errors import CapacityError, DomainError
from .groups.finite import FiniteGroup
from .groups.nilpotent import NilpotentGroup

DEFAULT_BRUTE_CAP = 5000
DEFAULT_CUT_CAP = 200


def brute_cap() -> int:
    """Order cap for brute-force work; ``POWERGRAPH_MAX_BRUTE`` overrides the default."""
    raw = os.environ.get("POWERGRAPH_MAX_BRUTE")
    if raw is None or raw.strip() == "":
        return DEFAULT_BRUTE_CAP
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"POWERGRAPH_MAX_BRUTE must be an integer, got {raw!r}") from None


def _group(G) -> FiniteGroup:
    return G.group if isinstance(G, NilpotentGroup) else G


def _check_cap(group: FiniteGroup, cap: int | None = None) -> None:
    cap = brute_cap() if cap is None else cap
    if group.order > cap:
        raise CapacityError(f"order {group.order} exceeds the brute-force cap {cap}")


def adjacency_matrix(G) -> np.ndarray:
    """Symmetric boolean adjacency matrix with an empty diagonal (cached on the group)."""
    group = _group(G)
    cached = getattr(group, "_adjacency", None)
    if cached is not None:
        return cached
    _check_cap(group)
    member = group.cyclic_membership()
    adj = member | member.T
    np.fill_diagonal(adj, False)
    adj.setflags(write=False)
    group._adjacency = adj
    return adj


def adjacent(G, x: int, y: int) -> bool:
    if int(x) == int(y):
        raise DomainError("the power graph has no loops")
    group = _group(G)
    member = getattr(group, "_membership", None)
    if member is not None:
        return bool(member[x, y] or member[y, x])
    return bool(np.isin(y, group.cyclic_members(x)) or np.isin(x, group.cyclic_members(y)))


def degrees_bruteforce(G) -> np.ndarray:
    group = _group(G)
    cached = getattr(group, "_degrees", None)
    if cached is None:
        cached = adjacency_matrix(group).sum(axis=1).astype(np.int64)
        cached.setflags(write=False)
        group._degrees = cached
    return cached


def degree_bruteforce(G, x: int) -> int:
    return int(degrees_bruteforce(G)[int(x)])


def min_degree_bruteforce(G) -> tuple[int, tuple[int, ...]]:
    """Minimum degree and the full argmin set, ascending."""
    group = _group(G)
    if group.order < 2:
        raise DomainError("minimum degree needs at least two vertices")
    deg = degrees_bruteforce(group)
    delta = int(deg.min())
    return delta, tuple(int(v) for v in np.flatnonzero(deg == delta))


def is_complete(G) -> bool:
    group = _group(G)
    return bool((degrees_bruteforce(group) == group.order - 1).all())


def diameter_at_most_two(G) -> bool:
    """Every pair of distinct vertices is adjacent or has a common neighbour."""
    adj = adjacency_matrix(G)
    a = adj.astype(np.float32)
    two_step = (a @ a) > 0
    reach = adj | two_step
    np.fill_diagonal(reach, True)
    return bool(reach.all())


def stoer_wagner(weights: np.ndarray) -> int:
    """Global minimum cut weight of an undirected graph given by a symmetric weight matrix."""
    W = np.array(weights, dtype=np.int64)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise DomainError("weight matrix must be square")
    if W.shape[0] < 2:
        raise DomainError("a cut needs at least two vertices")
    np.fill_diagonal(W, 0)
    big = int(W.sum()) + 1
    best = big
    while W.shape[0] > 1:
        m = W.shape[0]
        w = W[0].copy()
        w[0] = -big
        prev, last, cut = 0, 0, 0
        for _ in range(m - 1):
            nxt = int(w.argmax())
            cut = int(w[nxt])
            prev, last = last, nxt
            w += W[nxt]
            w[nxt] = -big
        best = min(best, cut)
        W[prev] += W[last]
        W[:, prev] += W[:, last]
        W[prev, prev] = 0
        W = np.delete(np.delete(W, last, axis=0), last, axis=1)
    return best


def edge_connectivity_small(G, cap: int = DEFAULT_CUT_CAP) -> int:
    group = _group(G)
    if group.order > cap:
        raise CapacityError(f"edge connectivity is limited to order <= {cap}, got {group.order}")
    if group.order < 2:
        raise DomainError("edge connectivity needs at least two vertices")
    return stoer_wagner(adjacency_matrix(group).astype(np.int64))


def write_edge_list(G, out: TextIO) -> int:
    """Write ``u v`` lines (``u < v``) for every edge; returns the edge count."""
    adj = adjacency_matrix(G)
    us, vs = np.nonzero(np.triu(adj, 1))
    for u, v in zip(us.tolist(), vs.tolist()):
        out.write(f"{u} {v}\n")
    return len(us)
