"""Nilpotent groups as products of their Sylow subgroups.

A :class:`NilpotentGroup` wraps a concrete :class:`FiniteGroup` together with
its Sylow subgroups ``P_1, ..., P_r`` (standalone groups, primes ascending)
and the isomorphism ``G = P_1 x ... x P_r`` in both directions.  Prime
indices are 0-based throughout the library.

Ties (canonical generators, witnesses) are broken by the lexicographic order
of Sylow coordinates.  For product-backed groups this is exactly the element
index order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ..arith import Factorization, factorize, prime_power_parts
from ..errors import DomainError, HypothesisError
from .finite import CyclicGroup, FiniteGroup, ProductGroup, TableGroup


@dataclass(frozen=True)
class AbelianSpec:
    """Abelian group as a product of prime-power cyclic factors, sorted by (prime, exponent)."""

    cyclic_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.cyclic_factors:
            raise DomainError("an abelian spec needs at least one factor")
        keyed = []
        for q in self.cyclic_factors:
            if q < 2:
                raise DomainError(f"cyclic factor must be > 1, got {q}")
            keyed.append((prime_power_parts(q), q))
        object.__setattr__(self, "cyclic_factors", tuple(q for _, q in sorted(keyed)))

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_factors)

    def __str__(self) -> str:
        return " x ".join(f"C{q}" for q in self.cyclic_factors)


@dataclass(frozen=True)
class CyclicSubgroup:
    generator: int
    order: int
    members: frozenset[int] = field(repr=False)

    def __contains__(self, x: int) -> bool:
        return int(x) in self.members


@dataclass(frozen=True)
class SylowDecomposition:
    """``x = x_1 ... x_r`` with ``x_i`` in ``P_i`` (elements of ``G``) and support ``tau``."""

    components: dict[int, int]
    tau: frozenset[int]


@dataclass(frozen=True)
class NilpotencyReport:
    nilpotent: bool
    prime: int | None = None
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def __bool__(self) -> bool:
        return self.nilpotent


class SylowData:
    """Per-Sylow facts: element orders, maximal cyclic subgroups, center."""

    def __init__(self, group: FiniteGroup, prime: int, alpha: int):
        if group.order != prime**alpha:
            raise HypothesisError(f"Sylow {prime}-subgroup has order {group.order}, expected {prime**alpha}")
        self.group = group
        self.prime = prime
        self.alpha = alpha
        self.order = group.order
        self.orders = group.element_orders
        self.identity = group.identity

    @cached_property
    def membership(self) -> np.ndarray:
        return self.group.cyclic_membership()

    @cached_property
    def canonical(self) -> np.ndarray:
        """``canonical[a]`` is the least generator of ``<a>``."""
        same = self.membership & (self.orders[None, :] == self.orders[:, None])
        return np.argmax(same, axis=1).astype(np.int64)

    @cached_property
    def maximal_mask(self) -> np.ndarray:
        """True where ``<a>`` is a maximal cyclic subgroup of this Sylow subgroup."""
        # in a p-group, <a> sits properly inside a cyclic subgroup iff it sits
        # inside one of order p * o(a)
        covered = np.zeros(self.order, dtype=bool)
        for o in np.unique(self.orders):
            rows = self.orders == o * self.prime
            if rows.any():
                covered |= self.membership[rows].any(axis=0) & (self.orders == o)
        return ~covered

    @cached_property
    def maximal(self) -> np.ndarray:
        """Canonical generators of the maximal cyclic subgroups, ascending."""
        return np.unique(self.canonical[self.maximal_mask])

    @cached_property
    def containing_count(self) -> np.ndarray:
        return self.membership[self.maximal].sum(axis=0).astype(np.int64)

    @cached_property
    def first_containing(self) -> np.ndarray:
        """Least maximal generator whose subgroup contains ``a``."""
        return self.maximal[np.argmax(self.membership[self.maximal], axis=0)]

    @cached_property
    def min_order_maximal(self) -> int:
        gens = self.maximal
        orders = self.orders[gens]
        return int(gens[np.flatnonzero(orders == orders.min())[0]])

    @cached_property
    def is_cyclic(self) -> bool:
        return self.group.is_cyclic()

    @cached_property
    def center(self) -> np.ndarray:
        return self.group.center()

    @cached_property
    def center_is_cyclic(self) -> bool:
        return self.group.is_cyclic(self.center)

    def members(self, a: int) -> np.ndarray:
        return np.flatnonzero(self.membership[a])

    def valuations(self, orders: np.ndarray) -> np.ndarray:
        """``log_p`` of an array of p-power orders."""
        out = np.zeros(orders.shape, dtype=np.int64)
        o = orders.copy()
        while (o > 1).any():
            hit = o > 1
            out[hit] += 1
            o[hit] //= self.prime
        return out


class NilpotentGroup:
    """A finite nilpotent group with its Sylow decomposition materialized."""

    def __init__(
        self,
        group: FiniteGroup,
        sylows: Sequence[FiniteGroup],
        compose: np.ndarray,
        name: str | None = None,
        spec=None,
    ):
        self.group = group
        self.order = group.order
        self.name = name or group.name
        self.spec = spec
        if self.order < 2:
            raise DomainError("the trivial group is not supported")
        self.factorization: Factorization = factorize(self.order)
        self.primes = self.factorization.primes
        self.alphas = self.factorization.exponents
        self.r = self.factorization.r
        self.sylows = [SylowData(s, p, a) for s, (p, a) in zip(sylows, self.factorization.factors)]
        self.compose_table = np.asarray(compose, dtype=np.int64)
        self.compose_table.setflags(write=False)

    @property
    def identity(self) -> int:
        return self.group.identity

    @property
    def elements(self) -> np.ndarray:
        return self.group.elements

    @cached_property
    def components(self) -> np.ndarray:
        """``(n, r)`` array of local Sylow indices of each element."""
        flat = np.argsort(self.compose_table.ravel(), kind="stable")
        coords = np.unravel_index(flat, self.compose_table.shape)
        return np.stack(coords, axis=1).astype(np.int64)

    def compose(self, locals_: Sequence) -> np.ndarray | int:
        return self.compose_table[tuple(np.asarray(c, dtype=np.int64) for c in locals_)]

    def embed(self, i: int, local) -> np.ndarray:
        """Image of local elements of ``P_i`` in ``G``."""
        local = np.asarray(local, dtype=np.int64)
        parts = [np.full(local.shape, s.identity, dtype=np.int64) for s in self.sylows]
        parts[i] = local
        return self.compose(parts)

    def sylow_members(self, i: int) -> np.ndarray:
        return np.sort(self.embed(i, np.arange(self.sylows[i].order)))

    @cached_property
    def orders(self) -> np.ndarray:
        return self.group.element_orders

    @cached_property
    def component_orders(self) -> np.ndarray:
        comp = self.components
        return np.stack([s.orders[comp[:, i]] for i, s in enumerate(self.sylows)], axis=1)

    @cached_property
    def beta(self) -> np.ndarray:
        """``(n, r)`` exponents with ``o(x_i) = p_i^beta[x, i]``."""
        co = self.component_orders
        return np.stack([s.valuations(co[:, i]) for i, s in enumerate(self.sylows)], axis=1)

    @cached_property
    def tau_mask(self) -> np.ndarray:
        return self.component_orders > 1

    @cached_property
    def tau_code(self) -> np.ndarray:
        """Support of each element as a bitmask over prime indices."""
        weights = 1 << np.arange(self.r, dtype=np.int64)
        return (self.tau_mask * weights).sum(axis=1)

    @cached_property
    def maximal_component_mask(self) -> np.ndarray:
        """``(n, r)``: whether ``<x_i>`` is maximal cyclic in ``P_i``."""
        comp = self.components
        return np.stack([s.maximal_mask[comp[:, i]] for i, s in enumerate(self.sylows)], axis=1)

    @cached_property
    def component_counts(self) -> np.ndarray:
        """``(n, r)``: number of maximal cyclic subgroups of ``P_i`` containing ``x_i``."""
        comp = self.components
        return np.stack([s.containing_count[comp[:, i]] for i, s in enumerate(self.sylows)], axis=1)

    @cached_property
    def containing_count(self) -> np.ndarray:
        """Number of maximal cyclic subgroups of ``G`` containing each element."""
        return self.component_counts.prod(axis=1)

    @cached_property
    def containing_count_support(self) -> np.ndarray:
        """Number of maximal cyclic subgroups of ``prod_{i in tau_x} P_i`` containing ``x``."""
        counts = np.where(self.tau_mask, self.component_counts, 1)
        return counts.prod(axis=1)

    @cached_property
    def canonical(self) -> np.ndarray:
        """Canonical generator of ``<x>`` for every element."""
        comp = self.components
        return self.compose([s.canonical[comp[:, i]] for i, s in enumerate(self.sylows)])

    @cached_property
    def is_cyclic(self) -> bool:
        return all(s.is_cyclic for s in self.sylows)

    @cached_property
    def is_abelian(self) -> bool:
        return self.group.is_abelian

    @cached_property
    def noncyclic_indices(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.sylows) if not s.is_cyclic)

    def label(self, x: int) -> str:
        return self.group.label(int(x))

    def parse_element(self, text: str) -> int:
        return self.group.parse_element(text)

    def __repr__(self) -> str:
        return f"<NilpotentGroup {self.name} order={self.order}>"


# Construction ------------------------------------------------------------------------


def _is_sorted_pgroup_product(group: FiniteGroup) -> bool:
    factors = group.factors if isinstance(group, ProductGroup) else (group,)
    primes = [f.prime for f in factors]
    return all(p is not None for p in primes) and primes == sorted(primes)


def _from_sorted_product(group: FiniteGroup, name: str | None, spec) -> NilpotentGroup:
    factors = group.factors if isinstance(group, ProductGroup) else (group,)
    sylows: list[FiniteGroup] = []
    for _, run in itertools.groupby(factors, key=lambda f: f.prime):
        run = list(run)
        sylows.append(run[0] if len(run) == 1 else ProductGroup(run))
    sizes = tuple(s.order for s in sylows)
    compose = np.arange(group.order, dtype=np.int64).reshape(sizes)
    return NilpotentGroup(group, sylows, compose, name=name, spec=spec)


def _crt_exponents(f: Factorization) -> list[int]:
    out = []
    for q in f.prime_powers:
        rest = f.n // q
        out.append(rest * pow(rest, -1, q) % f.n if q != f.n else 1)
    return out


def _from_general(group: FiniteGroup, name: str | None, spec) -> NilpotentGroup:
    report = is_nilpotent(group)
    if not report:
        raise HypothesisError(
            f"{group.name} is not nilpotent: its Sylow {report.prime}-subgroup is not unique"
        )
    f = factorize(group.order)
    n = group.order
    ar = group.elements
    sylows: list[FiniteGroup] = []
    embeds: list[np.ndarray] = []
    for (p, a), q in zip(f.factors, f.prime_powers):
        members = ar[q % group.element_orders == 0]
        lookup = np.full(n, -1, dtype=np.int64)
        lookup[members] = np.arange(len(members))
        table = lookup[group.mul(members[:, None], members[None, :])]
        labels = [group.label(int(m)) for m in members]
        sylows.append(TableGroup(table, name=f"P{p}", labels=labels, validate=False,
                                 identity=int(lookup[group.identity])))
        embeds.append(members)
    compose = embeds[0]
    for emb in embeds[1:]:
        compose = group.mul(compose[..., None], emb.reshape((1,) * compose.ndim + (-1,)))
    return NilpotentGroup(group, sylows, compose, name=name, spec=spec)


def make_group(spec, name: str | None = None) -> NilpotentGroup:
    """Build a :class:`NilpotentGroup` from an abelian spec, a spec string, or a concrete group.

    Non-nilpotent groups raise :class:`HypothesisError` naming the prime whose
    Sylow subgroup is not unique.
    """
    if isinstance(spec, NilpotentGroup):
        return spec
    if isinstance(spec, str):
        from ..grammar import parse_group_spec

        return parse_group_spec(spec).to_group()
    if isinstance(spec, (list, tuple)):
        # composite cyclic orders split into their prime-power parts
        spec = AbelianSpec(tuple(pp for q in spec for pp in factorize(int(q)).prime_powers))
    if isinstance(spec, AbelianSpec):
        group = ProductGroup([CyclicGroup(q) for q in spec.cyclic_factors], name=str(spec))
        return _from_sorted_product(group, name or str(spec), spec)
    if isinstance(spec, FiniteGroup):
        if _is_sorted_pgroup_product(spec):
            # products of p-groups are nilpotent by construction
            return _from_sorted_product(spec, name or spec.name, spec)
        return _from_general(spec, name or spec.name, spec)
    raise DomainError(f"cannot build a group from {type(spec).__name__}")


# Operations --------------------------------------------------------------------------


def element_order(G: NilpotentGroup | FiniteGroup, x: int) -> int:
    group = G.group if isinstance(G, NilpotentGroup) else G
    return int(group.element_orders[int(x)])


def sylow_decompose(G: NilpotentGroup, x: int) -> SylowDecomposition:
    """Split ``x`` into Sylow components using CRT exponents ``x_i = x^{m_i}``."""
    comps: dict[int, int] = {}
    tau = set()
    for i, (p, m) in enumerate(zip(G.primes, _crt_exponents(G.factorization))):
        xi = int(G.group.power(int(x), m))
        comps[p] = xi
        if xi != G.identity:
            tau.add(i)
    return SylowDecomposition(comps, frozenset(tau))


def _sylow_p_subgroup(group: FiniteGroup, p: int) -> np.ndarray:
    """A Sylow p-subgroup, grown greedily from p-elements in index order."""
    orders = group.element_orders
    p_elems = [int(x) for x in group.elements if _is_power_of(int(orders[x]), p)]
    current = np.array([group.identity], dtype=np.int64)
    for g in p_elems:
        if g in current:
            continue
        cand = group.generated_subgroup(list(current) + [g])
        if _is_power_of(len(cand), p):
            current = cand
    return current


def _is_power_of(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def is_nilpotent(group: FiniteGroup) -> NilpotencyReport:
    """Unique-Sylow test: every Sylow subgroup must equal all its conjugates.

    On failure the report carries two distinct Sylow p-subgroups.
    """
    if isinstance(group, NilpotentGroup):
        return NilpotencyReport(True)
    if group.prime is not None:
        return NilpotencyReport(True)
    f = factorize(group.order)
    for p in f.primes:
        P = _sylow_p_subgroup(group, p)
        pset = set(P.tolist())
        for g in group.elements:
            ginv = group.inverse(np.int64(g))
            conj = np.sort(group.mul(group.mul(g, P), ginv))
            if set(conj.tolist()) != pset:
                return NilpotencyReport(False, p, (tuple(P.tolist()), tuple(conj.tolist())))
    return NilpotencyReport(True)


def center(group: NilpotentGroup | FiniteGroup) -> frozenset[int]:
    g = group.group if isinstance(group, NilpotentGroup) else group
    return frozenset(int(z) for z in g.center())


def is_cyclic(group: NilpotentGroup | FiniteGroup, subset: Iterable[int] | None = None) -> bool:
    g = group.group if isinstance(group, NilpotentGroup) else group
    if subset is not None:
        subset = np.array(sorted(subset), dtype=np.int64)
    return g.is_cyclic(subset)


def _product_subgroup(G: NilpotentGroup, local_gens: Sequence[int]) -> CyclicSubgroup:
    parts = [G.sylows[i].members(a) for i, a in enumerate(local_gens)]
    members = G.compose_table[np.ix_(*parts)].ravel()
    gen = int(G.compose([G.sylows[i].canonical[a] for i, a in enumerate(local_gens)]))
    return CyclicSubgroup(gen, int(members.size), frozenset(members.tolist()))


def cyclic_subgroup(G: NilpotentGroup, x: int) -> CyclicSubgroup:
    """``<x>`` with its canonical generator."""
    return _product_subgroup(G, [int(a) for a in G.components[int(x)]])


def maximal_cyclic_subgroups(G: NilpotentGroup, method: str = "product") -> list[CyclicSubgroup]:
    """The maximal cyclic subgroups of ``G``, sorted by canonical generator.

    ``method="product"`` multiplies maximal cyclic subgroups of the Sylow
    subgroups; ``method="scan"`` lists every cyclic subgroup of ``G`` and keeps
    the inclusion-maximal ones.
    """
    if method == "product":
        out = [_product_subgroup(G, combo)
               for combo in itertools.product(*[s.maximal.tolist() for s in G.sylows])]
    elif method == "scan":
        out = _scan_maximal(G.group)
    else:
        raise DomainError(f"unknown method {method!r}")
    return sorted(out, key=lambda m: m.generator)


def _scan_maximal(group: FiniteGroup) -> list[CyclicSubgroup]:
    member = group.cyclic_membership()
    orders = group.element_orders
    seen: dict[bytes, int] = {}
    for x in range(group.order):
        key = np.packbits(member[x]).tobytes()
        if key not in seen:
            seen[key] = x
    subgroups = []
    for key, first in seen.items():
        row = member[first]
        gens = np.flatnonzero(row & (orders == orders[first]))
        subgroups.append((int.from_bytes(key, "big"), int(gens[0]), row))
    maximal = []
    for mask, gen, row in subgroups:
        if any(other != mask and mask & other == mask for other, _, _ in subgroups):
            continue
        members = np.flatnonzero(row)
        maximal.append(CyclicSubgroup(gen, int(members.size), frozenset(members.tolist())))
    return maximal


def min_order_max_cyclic(G: NilpotentGroup) -> CyclicSubgroup:
    """A maximal cyclic subgroup of least order, with the least canonical generator."""
    return _product_subgroup(G, [s.min_order_maximal for s in G.sylows])


def count_containing_maximal(G: NilpotentGroup, x: int) -> int:
    return int(G.containing_count[int(x)])


def count_containing_maximal_in_support(G: NilpotentGroup, x: int) -> int:
    """Maximal cyclic subgroups of ``prod_{i in tau_x} P_i`` that contain ``x``."""
    return int(G.containing_count_support[int(x)])


def support_subgroup(G: NilpotentGroup, tau: Iterable[int]) -> np.ndarray:
    """Sorted elements of ``prod_{i in tau} P_i``."""
    tau = set(tau)
    parts = [np.arange(s.order) if i in tau else np.array([s.identity])
             for i, s in enumerate(G.sylows)]
    return np.sort(G.compose_table[np.ix_(*parts)].ravel())
