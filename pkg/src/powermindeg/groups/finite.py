"""Concrete finite groups on the index set ``0 .. order-1``.

Three backends share one interface: :class:`CyclicGroup` (addition mod q),
:class:`TableGroup` (explicit Cayley table) and :class:`ProductGroup`
(direct product, elements indexed in mixed radix with the first factor most
significant, so index order is lexicographic order on coordinates).

All operations accept numpy integer arrays and broadcast.
"""

from __future__ import annotations

import math
import re
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..arith import factorize
from ..errors import DomainError, SpecSyntaxError, StructureError

ASSOCIATIVITY_CAP = 512

_WORD_TOKEN = re.compile(r"([A-Za-z])\^?(-?\d+)?")


class FiniteGroup:
    """Base class; subclasses provide ``order``, ``identity`` and :meth:`mul`."""

    order: int
    identity: int
    name: str

    def mul(self, a, b) -> np.ndarray:
        raise NotImplementedError

    def power(self, x, k: int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if k < 0:
            return self.power(self.inverse(x), -k)
        result = np.full(x.shape, self.identity, dtype=np.int64)
        base = x
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def inverse(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        orders = self.element_orders[x]
        out = np.empty_like(x)
        for o in np.unique(orders):
            mask = orders == o
            out[mask] = self.power(x[mask], int(o) - 1)
        return out

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    @cached_property
    def element_orders(self) -> np.ndarray:
        ar = self.elements
        orders = np.zeros(self.order, dtype=np.int64)
        cur = ar.copy()
        k = 1
        while True:
            hit = (cur == self.identity) & (orders == 0)
            orders[hit] = k
            if orders.all():
                return orders
            cur = self.mul(cur, ar)
            k += 1

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    def element_order(self, x: int) -> int:
        return int(self.element_orders[x])

    @cached_property
    def is_abelian(self) -> bool:
        ar = self.elements
        for a in ar:
            if not np.array_equal(self.mul(a, ar), self.mul(ar, a)):
                return False
        return True

    def center(self) -> np.ndarray:
        """Sorted indices of the elements commuting with everything."""
        if self.is_abelian:
            return self.elements
        ar = self.elements
        keep = [int(z) for z in ar if np.array_equal(self.mul(z, ar), self.mul(ar, z))]
        return np.array(keep, dtype=np.int64)

    def is_cyclic(self, subset: Iterable[int] | None = None) -> bool:
        """True iff ``subset`` (a subgroup; default the whole group) has an element of full order."""
        if subset is None:
            return int(self.element_orders.max()) == self.order
        members = np.fromiter(subset, dtype=np.int64) if not isinstance(subset, np.ndarray) else subset
        return int(self.element_orders[members].max()) == len(members)

    @cached_property
    def prime(self) -> int | None:
        """The prime ``p`` if this is a p-group (of order > 1), else ``None``."""
        if self.order < 2:
            return None
        f = factorize(self.order)
        return f.primes[0] if f.r == 1 else None

    def cyclic_membership(self) -> np.ndarray:
        """Boolean matrix ``C`` with ``C[x, y]`` true iff ``y`` lies in ``<x>``."""
        cached = getattr(self, "_membership", None)
        if cached is not None:
            return cached
        n = self.order
        ar = self.elements
        member = np.zeros((n, n), dtype=bool)
        cur = np.full(n, self.identity, dtype=np.int64)
        for _ in range(self.exponent):
            member[ar, cur] = True
            cur = self.mul(cur, ar)
        member.setflags(write=False)
        self._membership = member
        return member

    def cyclic_members(self, x: int) -> np.ndarray:
        """Sorted elements of ``<x>``."""
        o = int(self.element_orders[x])
        out = np.empty(o, dtype=np.int64)
        cur = np.int64(self.identity)
        for k in range(o):
            out[k] = cur
            cur = self.mul(cur, x)
        return np.sort(out)

    def generated_subgroup(self, gens: Iterable[int]) -> np.ndarray:
        """Sorted elements of the subgroup generated by ``gens``."""
        gens = np.unique(np.fromiter(gens, dtype=np.int64))
        members = np.array([self.identity], dtype=np.int64)
        frontier = members
        while frontier.size:
            prods = self.mul(frontier[:, None], gens[None, :]).ravel()
            new = np.setdiff1d(prods, members)
            members = np.union1d(members, new)
            frontier = new
        return members

    def label(self, x: int) -> str:
        return str(int(x))

    def parse_element(self, text: str) -> int:
        text = text.strip()
        try:
            value = int(text)
        except ValueError:
            raise SpecSyntaxError(f"cannot parse element {text!r} of {self.name}", text, 0) from None
        if not 0 <= value < self.order:
            raise SpecSyntaxError(f"element {value} out of range for {self.name}", text, 0)
        return value

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} order={self.order}>"


class CyclicGroup(FiniteGroup):
    """``C_q`` as integers mod ``q``."""

    def __init__(self, q: int):
        if q < 1:
            raise DomainError(f"cyclic group order must be positive, got {q}")
        self.order = q
        self.identity = 0
        self.name = f"C{q}"

    def mul(self, a, b):
        return (np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64)) % self.order

    def power(self, x, k: int):
        return (np.asarray(x, dtype=np.int64) * k) % self.order

    def inverse(self, x):
        return (-np.asarray(x, dtype=np.int64)) % self.order

    @cached_property
    def element_orders(self):
        ar = self.elements
        return self.order // np.gcd(ar, self.order)

    @property
    def is_abelian(self) -> bool:
        return True


class TableGroup(FiniteGroup):
    """A group given by its multiplication table ``table[a, b] = a*b``.

    Construction checks the Latin-square property, finds the identity, and
    checks associativity exhaustively when ``order <= assoc_cap``.
    """

    def __init__(
        self,
        table,
        *,
        name: str | None = None,
        labels: Sequence[str] | None = None,
        generators: Mapping[str, int] | None = None,
        identity: int | None = None,
        validate: bool = True,
        assoc_cap: int = ASSOCIATIVITY_CAP,
    ):
        table = np.array(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise StructureError("multiplication table must be a nonempty square array")
        n = table.shape[0]
        self.order = n
        self.table = table
        self.table.setflags(write=False)
        self.name = name or f"T{n}"
        if validate:
            found = _validate_table(table, assoc_cap)
            if identity is not None and identity != found:
                raise StructureError(f"declared identity {identity} is not the identity ({found})")
            identity = found
        elif identity is None:
            identity = int(np.flatnonzero((table == np.arange(n)).all(axis=1))[0])
        self.identity = int(identity)
        if labels is not None and len(labels) != n:
            raise StructureError("labels must have one entry per element")
        self._labels = list(labels) if labels is not None else None
        self._label_index = {lab: i for i, lab in enumerate(self._labels or [])}
        self.generators = dict(generators or {})

    def mul(self, a, b):
        return self.table[np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)]

    def label(self, x: int) -> str:
        if self._labels is None:
            return str(int(x))
        return self._labels[int(x)]

    def parse_element(self, text: str) -> int:
        text = text.strip()
        if text in self._label_index:
            return self._label_index[text]
        if not self.generators:
            return super().parse_element(text)
        pos = 0
        value = np.int64(self.identity)
        while pos < len(text):
            m = _WORD_TOKEN.match(text, pos)
            if m is None or m.group(1) not in self.generators:
                raise SpecSyntaxError(f"bad element word {text!r} for {self.name}", text, pos)
            k = int(m.group(2)) if m.group(2) else 1
            value = self.mul(value, self.power(self.generators[m.group(1)], k))
            pos = m.end()
        if not text:
            raise SpecSyntaxError("empty element", text, 0)
        return int(value)

    def subgroup(self, members: Sequence[int], name: str | None = None) -> "TableGroup":
        """The subgroup on ``members`` (sorted) as a standalone table group."""
        members = np.asarray(sorted(int(m) for m in members), dtype=np.int64)
        lookup = np.full(self.order, -1, dtype=np.int64)
        lookup[members] = np.arange(len(members))
        sub = lookup[self.table[np.ix_(members, members)]]
        if (sub < 0).any():
            raise StructureError("member set is not closed under multiplication")
        labels = [self.label(m) for m in members] if self._labels is not None else None
        return TableGroup(sub, name=name, labels=labels, validate=False,
                          identity=int(lookup[self.identity]))


def _validate_table(table: np.ndarray, assoc_cap: int) -> int:
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise StructureError("table entries out of range")
    ar = np.arange(n)
    if not (np.sort(table, axis=1) == ar).all() or not (np.sort(table, axis=0) == ar[:, None]).all():
        raise StructureError("table is not a Latin square")
    left = np.flatnonzero((table == ar).all(axis=1))
    right = np.flatnonzero((table.T == ar).all(axis=1))
    ids = np.intersect1d(left, right)
    if ids.size != 1:
        raise StructureError("table has no two-sided identity")
    if n <= assoc_cap:
        for a in range(n):
            # (a*b)*c versus a*(b*c) for all b, c
            lhs = table[table[a]]
            rhs = table[a][table]
            if not np.array_equal(lhs, rhs):
                b, c = np.argwhere(lhs != rhs)[0]
                raise StructureError(f"table is not associative at ({a}, {b}, {c})")
    return int(ids[0])


class ProductGroup(FiniteGroup):
    """Direct product of ``factors``; nested products are flattened."""

    def __init__(self, factors: Sequence[FiniteGroup], name: str | None = None):
        flat: list[FiniteGroup] = []
        for f in factors:
            flat.extend(f.factors if isinstance(f, ProductGroup) else [f])
        if not flat:
            raise DomainError("a product needs at least one factor")
        self.factors = tuple(flat)
        self.radices = tuple(f.order for f in self.factors)
        self.order = math.prod(self.radices)
        self.identity = int(np.ravel_multi_index([f.identity for f in self.factors], self.radices))
        self.name = name or " x ".join(f.name for f in self.factors)

    def coords(self, x) -> tuple[np.ndarray, ...]:
        return np.unravel_index(np.asarray(x, dtype=np.int64), self.radices)

    def index(self, coords: Sequence) -> np.ndarray:
        return np.ravel_multi_index(tuple(np.asarray(c, dtype=np.int64) for c in coords), self.radices)

    def mul(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        ca, cb = self.coords(a), self.coords(b)
        return self.index([f.mul(u, v) for f, u, v in zip(self.factors, ca, cb)]).astype(np.int64)

    def power(self, x, k: int):
        cx = self.coords(x)
        return self.index([f.power(u, k) for f, u in zip(self.factors, cx)]).astype(np.int64)

    def inverse(self, x):
        cx = self.coords(x)
        return self.index([f.inverse(u) for f, u in zip(self.factors, cx)]).astype(np.int64)

    @cached_property
    def element_orders(self):
        cx = self.coords(self.elements)
        parts = [f.element_orders[c] for f, c in zip(self.factors, cx)]
        return np.lcm.reduce(np.stack(parts), axis=0)

    @cached_property
    def is_abelian(self) -> bool:
        return all(f.is_abelian for f in self.factors)

    def center(self):
        centers = [f.center() for f in self.factors]
        grids = np.meshgrid(*centers, indexing="ij")
        return np.sort(self.index([g.ravel() for g in grids]).astype(np.int64))

    def label(self, x: int) -> str:
        cx = self.coords(int(x))
        return ",".join(f.label(int(c)) for f, c in zip(self.factors, cx))

    def parse_element(self, text: str) -> int:
        parts = text.split(",")
        if len(parts) != len(self.factors):
            raise SpecSyntaxError(
                f"element {text!r} needs {len(self.factors)} comma-separated coordinates", text, 0
            )
        offset = 0
        coords = []
        for f, part in zip(self.factors, parts):
            try:
                coords.append(f.parse_element(part))
            except SpecSyntaxError as exc:
                raise SpecSyntaxError(str(exc).split(" at position")[0], text, offset) from None
            offset += len(part) + 1
        return int(self.index(coords))
