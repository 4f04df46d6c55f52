"""Exact integer number theory used by the degree formulas.

Everything here works on Python integers, so there is no silent wraparound;
inputs above :data:`FACTOR_CAP` are rejected instead.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DomainError

FACTOR_CAP = 2**64
_TRIAL_LIMIT = 10**12


@dataclass(frozen=True)
class Factorization:
    """Prime-power decomposition ``n = p_1^a_1 ... p_r^a_r`` with ``p_1 < ... < p_r``."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise DomainError(f"factorization requires n >= 2, got {self.n}")
        primes = [p for p, _ in self.factors]
        if any(a >= b for a, b in zip(primes, primes[1:])):
            raise DomainError("primes must be strictly increasing")
        if any(e < 1 for _, e in self.factors):
            raise DomainError("exponents must be >= 1")
        if math.prod(p**e for p, e in self.factors) != self.n:
            raise DomainError("prime powers do not multiply to n")
        if not all(is_prime(p) for p in primes):
            raise DomainError("non-prime factor in factorization")

    @property
    def r(self) -> int:
        return len(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.factors)

    @property
    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**e for p, e in self.factors)

    def exponent_of(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def __str__(self) -> str:
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def is_prime(n: int) -> bool:
    """Deterministic primality test (trial division, then sympy for big inputs)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    if n < 10**10:
        i = 5
        while i * i <= n:
            if n % i == 0 or n % (i + 2) == 0:
                return False
            i += 6
        return True
    from sympy import isprime

    return bool(isprime(n))


@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    """Factor ``n`` into prime powers.

    Trial division handles everything at group-order scale; inputs beyond
    ``10**12`` are handed to ``sympy.factorint``.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"factorize expects an int, got {type(n).__name__}")
    if n < 2:
        raise DomainError(f"factorize requires n >= 2, got {n}")
    if n > FACTOR_CAP:
        raise DomainError(f"{n} exceeds the factorization cap 2**64")
    if n > _TRIAL_LIMIT:
        from sympy import factorint

        found = {int(p): int(e) for p, e in factorint(n).items()}
        return Factorization(n, tuple(sorted(found.items())))

    found: dict[int, int] = {}
    m = n
    for p in (2, 3):
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    d = 5
    while d * d <= m:
        for q in (d, d + 2):
            while m % q == 0:
                found[q] = found.get(q, 0) + 1
                m //= q
        d += 6
    if m > 1:
        found[m] = found.get(m, 0) + 1
    return Factorization(n, tuple(sorted(found.items())))


def totient(arg: Factorization | int) -> int:
    """Euler's totient, computed multiplicatively; ``totient(1) == 1``."""
    if isinstance(arg, Factorization):
        f = arg
    else:
        if arg < 1:
            raise DomainError(f"totient requires a positive integer, got {arg}")
        if arg == 1:
            return 1
        f = factorize(arg)
    return math.prod(p ** (e - 1) * (p - 1) for p, e in f.factors)


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n`` in increasing order."""
    if n < 1:
        raise DomainError(f"divisors requires n >= 1, got {n}")
    if n == 1:
        return [1]
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def prime_power_parts(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise if ``q`` is not a prime power > 1."""
    f = factorize(q)
    if f.r != 1:
        raise DomainError(f"{q} is not a prime power")
    return f.factors[0]


class Multiplier(enum.Enum):
    TWO = "TWO"
    R_PLUS_ONE = "R_PLUS_ONE"


class Radical(enum.Enum):
    HOLDS_STRICT = "HOLDS_STRICT"
    HOLDS_EQUAL = "HOLDS_EQUAL"
    FAILS = "FAILS"

    @property
    def holds(self) -> bool:
        return self is not Radical.FAILS


def radical_condition(primes: Sequence[int], multiplier: Multiplier = Multiplier.TWO) -> Radical:
    """Compare ``m * phi(prod primes)`` with ``prod primes``.

    ``m`` is 2 or ``len(primes) + 1``. The primes must be distinct and given
    in ascending order.
    """
    primes = list(primes)
    if not primes:
        raise DomainError("radical_condition needs at least one prime")
    if any(a >= b for a, b in zip(primes, primes[1:])):
        raise DomainError("primes must be distinct and ascending")
    if not all(is_prime(p) for p in primes):
        raise DomainError("radical_condition received a non-prime")
    m = 2 if multiplier is Multiplier.TWO else len(primes) + 1
    radical = math.prod(primes)
    lhs = m * math.prod(p - 1 for p in primes)
    if lhs > radical:
        return Radical.HOLDS_STRICT
    if lhs == radical:
        return Radical.HOLDS_EQUAL
    return Radical.FAILS


def two_phi_holds(primes: Iterable[int]) -> bool:
    """``2 phi(prod P) >= prod P``, with the empty product counted as 1 (always true)."""
    primes = sorted(primes)
    if not primes:
        return True
    return radical_condition(primes, Multiplier.TWO).holds


def primes_below(limit: int) -> list[int]:
    return [p for p in range(2, limit) if is_prime(p)]
