"""Group spec strings such as ``"C2 x C2 x C9"`` or ``"Q8 x C9"``.

Grammar::

    expr := term (" x " term)*
    term := "C" <int> | "Q8" | "D8" | "M16" | "Heis27" | "(" expr ")"

Cyclic terms of composite order are split into prime-power factors, and the
factors are put in a canonical order, so printing a parsed spec and parsing
it again gives the same expression.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .arith import factorize, prime_power_parts
from .errors import DomainError, SpecSyntaxError
from .groups.catalog import CATALOG
from .groups.finite import CyclicGroup, ProductGroup
from .groups.nilpotent import AbelianSpec, NilpotentGroup, make_group

# prime and order of each catalog group
NAMED_ORDERS = {"Q8": (2, 8), "D8": (2, 8), "M16": (2, 16), "Heis27": (3, 27)}
if set(NAMED_ORDERS) != set(CATALOG):
    raise ImportError("catalog and grammar disagree on named groups")

_TOKEN = re.compile(r"\s*(?:(?P<lpar>\()|(?P<rpar>\))|(?P<times>x|×|\*)(?![A-Za-z0-9])|(?P<word>[A-Za-z][A-Za-z0-9]*))")


@dataclass(frozen=True, order=True)
class Factor:
    """One prime-power direct factor: a cyclic group ``C<size>`` or a catalog group."""

    prime: int
    kind: int  # 0 cyclic, 1 named; cyclic factors sort first
    size: int
    name: str

    @classmethod
    def cyclic(cls, q: int) -> "Factor":
        p, _ = prime_power_parts(q)
        return cls(p, 0, q, f"C{q}")

    @classmethod
    def named(cls, name: str) -> "Factor":
        p, size = NAMED_ORDERS[name]
        return cls(p, 1, size, name)

    @property
    def is_cyclic(self) -> bool:
        return self.kind == 0

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class GroupSpecExpr:
    """Normalized direct product of prime-power factors."""

    factors: tuple[Factor, ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise DomainError("empty group spec")
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))

    def __str__(self) -> str:
        return " x ".join(map(str, self.factors))

    @property
    def is_abelian(self) -> bool:
        return all(f.is_cyclic for f in self.factors)

    @property
    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f.size
        return out

    def abelian_spec(self) -> AbelianSpec:
        if not self.is_abelian:
            raise DomainError(f"{self} has nonabelian factors")
        return AbelianSpec(tuple(f.size for f in self.factors))

    def to_group(self) -> NilpotentGroup:
        if self.is_abelian:
            return make_group(self.abelian_spec(), name=str(self))
        parts = [CyclicGroup(f.size) if f.is_cyclic else CATALOG[f.name]() for f in self.factors]
        return make_group(ProductGroup(parts, name=str(self)), name=str(self))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if m is None:
                start = len(text) - len(text[pos:].lstrip())
                raise SpecSyntaxError(f"unexpected character {text[start]!r}", text, start)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise SpecSyntaxError("unexpected end of spec", self.text, len(self.text))
        self.i += 1
        return tok

    def expr(self) -> list[Factor]:
        out = self.term()
        while (tok := self.peek()) is not None and tok[0] == "times":
            self.take()
            out.extend(self.term())
        return out

    def term(self) -> list[Factor]:
        kind, value, pos = self.take()
        if kind == "lpar":
            inner = self.expr()
            close = self.take()
            if close[0] != "rpar":
                raise SpecSyntaxError(f"expected ')' but found {close[1]!r}", self.text, close[2])
            return inner
        if kind != "word":
            raise SpecSyntaxError(f"expected a group term but found {value!r}", self.text, pos)
        if value in NAMED_ORDERS:
            return [Factor.named(value)]
        m = re.fullmatch(r"C(\d+)", value)
        if m is None:
            raise SpecSyntaxError(f"unknown group name {value!r}", self.text, pos)
        q = int(m.group(1))
        if q < 2:
            raise SpecSyntaxError(f"{value} is not allowed; cyclic orders start at 2", self.text, pos)
        return [Factor.cyclic(pp) for pp in factorize(q).prime_powers]

    def parse(self) -> GroupSpecExpr:
        if not self.tokens:
            raise SpecSyntaxError("empty group spec", self.text, 0)
        factors = self.expr()
        tok = self.peek()
        if tok is not None:
            raise SpecSyntaxError(f"unexpected token {tok[1]!r}", self.text, tok[2])
        return GroupSpecExpr(tuple(factors))


def parse_group_spec(text: str) -> GroupSpecExpr:
    return _Parser(text).parse()


def spec_of(spec: AbelianSpec) -> GroupSpecExpr:
    return GroupSpecExpr(tuple(Factor.cyclic(q) for q in spec.cyclic_factors))
