"""Closed-form vertex degrees and the executable catalog of degree comparisons.

For ``x != e`` in a nilpotent group and a maximal cyclic subgroup ``M``
containing ``x``, with ``|M cap P_i| = p_i^gamma_i`` and
``o(x) = prod_{i in tau} p_i^beta_i``::

    deg(x) >= o(x) - phi(o(x))
              + prod_{j not in tau} p_j^alpha_j * prod_{i in tau} (p_i^gamma_i - p_i^(beta_i - 1))
              - 1

with equality exactly when ``x`` lies in a single maximal cyclic subgroup of
``prod_{i in tau} P_i``.  :func:`verify_proposition_catalog` checks the
comparison results built on this bound by brute force over a whole group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import totient, two_phi_holds
from .errors import DomainError
from .groups.nilpotent import CyclicSubgroup, NilpotentGroup, _product_subgroup
from .powergraph import degrees_bruteforce


@dataclass(frozen=True)
class DegreeContext:
    primes: tuple[int, ...]
    alphas: tuple[int, ...]
    tau: frozenset[int]
    gamma: tuple[int, ...]
    beta: tuple[int, ...]

    def __post_init__(self) -> None:
        r = len(self.primes)
        if not (len(self.alphas) == len(self.gamma) == len(self.beta) == r):
            raise DomainError("context vectors must all have one entry per prime")
        if not self.tau or not self.tau <= set(range(r)):
            raise DomainError("tau must be a nonempty set of prime indices")
        for i in range(r):
            if not 1 <= self.gamma[i] <= self.alphas[i]:
                raise DomainError(f"gamma[{i}]={self.gamma[i]} outside [1, {self.alphas[i]}]")
            if i in self.tau and not 1 <= self.beta[i] <= self.gamma[i]:
                raise DomainError(f"beta[{i}]={self.beta[i]} outside [1, gamma]")

    @property
    def element_order(self) -> int:
        return math.prod(self.primes[i] ** self.beta[i] for i in self.tau)

    @classmethod
    def from_element(cls, G: NilpotentGroup, x: int, M: CyclicSubgroup) -> "DegreeContext":
        """Measure ``gamma`` from ``|M cap P_i|`` and ``beta`` from the order of ``x``."""
        x = int(x)
        if x not in M:
            raise DomainError("x is not a member of M")
        if x == G.identity:
            raise DomainError("the identity has no degree context")
        members = np.fromiter(M.members, dtype=np.int64)
        codes = G.tau_code[members]
        gamma = []
        for i, p in enumerate(G.primes):
            size = int(((codes & ~(1 << i)) == 0).sum())
            gamma.append(round(math.log(size, p)))
        tau = frozenset(int(i) for i in np.flatnonzero(G.tau_mask[x]))
        beta = tuple(int(b) for b in G.beta[x])
        return cls(tuple(G.primes), tuple(G.alphas), tau, tuple(gamma), beta)


def degree_lower_bound(ctx: DegreeContext) -> int:
    o = ctx.element_order
    outside = math.prod(p**a for i, (p, a) in enumerate(zip(ctx.primes, ctx.alphas)) if i not in ctx.tau)
    inside = math.prod(ctx.primes[i] ** ctx.gamma[i] - ctx.primes[i] ** (ctx.beta[i] - 1) for i in ctx.tau)
    return o - totient(o) + outside * inside - 1


def degree_lower_bounds(G: NilpotentGroup, xs: np.ndarray, gamma: np.ndarray) -> np.ndarray:
    """Vectorised :func:`degree_lower_bound` for elements ``xs`` sharing one ``gamma`` vector."""
    xs = np.asarray(xs, dtype=np.int64)
    p = np.asarray(G.primes, dtype=np.int64)
    alpha = np.asarray(G.alphas, dtype=np.int64)
    gamma = np.asarray(gamma, dtype=np.int64)
    tau = G.tau_mask[xs]
    beta = G.beta[xs]
    inside = p**gamma - p ** np.maximum(beta - 1, 0)
    factor = np.where(tau, inside, p**alpha)
    o = G.orders[xs]
    return o - element_totients(G)[xs] + factor.prod(axis=1) - 1


def element_totients(G: NilpotentGroup) -> np.ndarray:
    cached = getattr(G, "_phi_orders", None)
    if cached is None:
        values = {int(o): totient(int(o)) for o in np.unique(G.orders)}
        cached = np.array([values[int(o)] for o in G.orders], dtype=np.int64)
        G._phi_orders = cached
    return cached


def containing_maximal(G: NilpotentGroup, x: int) -> CyclicSubgroup:
    """The canonical-first maximal cyclic subgroup of ``G`` containing ``x``."""
    comp = G.components[int(x)]
    return _product_subgroup(G, [int(s.first_containing[a]) for s, a in zip(G.sylows, comp)])


def closed_form_degree(G: NilpotentGroup, x: int) -> int | None:
    """Exact degree from the lower bound, or ``None`` when the bound is not tight for ``x``."""
    x = int(x)
    if x == G.identity:
        raise DomainError("the identity has degree n - 1; no closed form is needed")
    if G.containing_count_support[x] != 1:
        return None
    return degree_lower_bound(DegreeContext.from_element(G, x, containing_maximal(G, x)))


def closed_form_degrees(G: NilpotentGroup) -> np.ndarray:
    """Closed-form degree of every element; ``-1`` where it does not apply (and at ``e``)."""
    comp = G.components
    gamma = np.stack(
        [s.valuations(s.orders[s.first_containing[comp[:, i]]]) for i, s in enumerate(G.sylows)], axis=1
    )
    p = np.asarray(G.primes, dtype=np.int64)
    alpha = np.asarray(G.alphas, dtype=np.int64)
    inside = p**gamma - p ** np.maximum(G.beta - 1, 0)
    factor = np.where(G.tau_mask, inside, p**alpha)
    out = G.orders - element_totients(G) + factor.prod(axis=1) - 1
    out = np.where(G.containing_count_support == 1, out, -1)
    out[G.identity] = -1
    return out


# Proposition catalog ------------------------------------------------------------------

CATALOG_NAMES = (
    "mindeg_in_pi",
    "rem2",
    "propcomp_i",
    "propcomp_ii",
    "proplessthan",
    "prop_abelian",
    "lem32",
)


@dataclass
class PropositionResult:
    instances: int = 0
    failures: int = 0
    witness: list[int] | None = None

    def record(self, holds: np.ndarray, witnesses: np.ndarray | None = None) -> None:
        holds = np.asarray(holds, dtype=bool)
        self.instances += int(holds.size)
        bad = np.flatnonzero(~holds)
        self.failures += int(bad.size)
        if bad.size and self.witness is None and witnesses is not None:
            self.witness = [int(v) for v in np.atleast_1d(witnesses[bad[0]])]

    def to_dict(self) -> dict:
        return {"instances": self.instances, "failures": self.failures, "witness": self.witness}


@dataclass
class CatalogReport:
    group: str
    results: dict[str, PropositionResult] = field(
        default_factory=lambda: {name: PropositionResult() for name in CATALOG_NAMES}
    )

    @property
    def failures(self) -> int:
        return sum(r.failures for r in self.results.values())

    @property
    def vacuous(self) -> list[str]:
        return [name for name, r in self.results.items() if r.instances == 0]

    def to_dict(self) -> dict:
        return {name: r.to_dict() for name, r in self.results.items()}


def subset_two_phi(G: NilpotentGroup) -> np.ndarray:
    """``out[code]`` tells whether the 2-phi condition holds on the primes in bitmask ``code``."""
    return np.array(
        [two_phi_holds(p for i, p in enumerate(G.primes) if code >> i & 1) for code in range(1 << G.r)],
        dtype=bool,
    )


def _popcount(codes: np.ndarray) -> np.ndarray:
    out = np.zeros_like(codes)
    c = codes.copy()
    while c.any():
        out += c & 1
        c >>= 1
    return out


def verify_proposition_catalog(G: NilpotentGroup, degrees: np.ndarray | None = None) -> CatalogReport:
    """Enumerate every hypothesis-satisfying instance of each comparison and check it by brute force."""
    deg = degrees_bruteforce(G) if degrees is None else degrees
    report = CatalogReport(G.name)
    res = report.results
    if G.r < 2:
        return report
    r = G.r
    n = G.order
    ar = G.elements
    comp = G.components
    codes = G.tau_code
    full = (1 << r) - 1
    rad2 = subset_two_phi(G)
    ident_local = [s.identity for s in G.sylows]

    # minimum-order maximal generators of P_k beat every element of P_k
    for k, s in enumerate(G.sylows):
        local_orders = s.orders[s.maximal]
        mins = np.flatnonzero(s.maximal_mask & (s.orders == local_orders.min()))
        ys = G.embed(k, mins)
        xs = G.embed(k, np.arange(s.order))
        holds = deg[ys][:, None] <= deg[xs][None, :]
        pairs = np.stack(np.broadcast_arrays(ys[:, None], xs[None, :]), axis=-1)
        res["mindeg_in_pi"].record(holds.ravel(), pairs.reshape(-1, 2))

    # equal-order generators of maximal cyclic subgroups of a partial product share degrees
    maxc = G.maximal_component_mask
    canon = G.canonical
    for code in range(1, full + 1):
        bits = np.array([code >> i & 1 for i in range(r)], dtype=bool)
        sel = (codes == code) & (maxc | ~bits).all(axis=1)
        xs = ar[sel]
        for o in np.unique(G.orders[xs]):
            cls = xs[G.orders[xs] == o]
            ref = cls[0]
            others = cls[canon[cls] != canon[ref]]
            if others.size:
                res["rem2"].record(deg[others] == deg[ref],
                                   np.stack([np.full(others.size, ref), others], axis=1))

    # generators of maximal cyclic subgroups against their partial products
    ys = ar[maxc.all(axis=1)]
    noncyclic = np.array([not s.is_cyclic for s in G.sylows])
    for code in range(1, full):
        inside = np.array([code >> i & 1 for i in range(r)], dtype=bool)
        parts = [comp[ys, i] if inside[i] else np.full(ys.size, ident_local[i]) for i in range(r)]
        xs = G.compose(parts)
        wit = np.stack([ys, xs], axis=1)
        if not noncyclic[~inside].any():
            res["propcomp_i"].record(deg[ys] > deg[xs], wit)
        if noncyclic[~inside].any() and rad2[code]:
            res["propcomp_ii"].record(deg[ys] < deg[xs], wit)

    # y^{p_k} = x with a non-maximal component beyond k
    cnt_support = G.containing_count_support
    pop = _popcount(codes)
    for k, p in enumerate(G.primes):
        xs = G.group.power(ar, p)
        xcodes = codes[xs]
        later_nonmax = np.zeros(n, dtype=bool)
        for l in range(k + 1, r):
            later_nonmax |= (xcodes >> l & 1).astype(bool) & ~maxc[:, l]
        sel = (
            (pop[xs] >= 2)
            & (xcodes >> k & 1).astype(bool)
            & (cnt_support[xs] == 1)
            & later_nonmax
            & rad2[xcodes]
        )
        y_sel = ar[sel]
        res["proplessthan"].record(deg[y_sel] < deg[xs[y_sel]], np.stack([y_sel, xs[y_sel]], axis=1))

    # deg(x) <= deg(x^{p_k}) when Z(P_k) is noncyclic
    for k, (p, s) in enumerate(zip(G.primes, G.sylows)):
        if s.center_is_cyclic:
            continue
        in_tau = (codes >> k & 1).astype(bool)
        cond = np.ones(n, dtype=bool) if r == 3 else rad2[codes & ~(1 << k)]
        xs = ar[in_tau & cond]
        powered = G.group.power(xs, p)
        res["prop_abelian"].record(deg[xs] <= deg[powered], np.stack([xs, powered], axis=1))

    # cyclic groups: deeper p_i-powers of a generator have smaller degree
    if G.is_cyclic:
        y = int(ar[G.orders == n][0])
        for i, (p, a) in enumerate(zip(G.primes, G.alphas)):
            for g in range(a + 1):
                for b in range(g + 1, a + 1):
                    u = int(G.group.power(y, p**g))
                    v = int(G.group.power(y, p**b))
                    res["lem32"].record(np.array([deg[u] > deg[v]]), np.array([[u, v]]))
    return report
