"""Sets of primes that are either finite or cofinite.

Every prime set the engine handles (the divisibility sets of a group,
their complements, supports of formal families) has one of these two
shapes, so membership and the boolean operations stay decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from sympy import isprime, nextprime


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    return isinstance(n, int) and n >= 2 and bool(isprime(n))


def primes_from(start: int = 2) -> Iterator[int]:
    """Yield the primes >= start in increasing order."""
    p = start if is_prime(start) else nextprime(start)
    while True:
        yield p
        p = nextprime(p)


@dataclass(frozen=True)
class PrimeSet:
    """A finite set of primes, or the complement of one.

    >>> PrimeSet.all().without(2)
    PrimeSet(cofinite=True, primes=frozenset({2}))
    >>> 3 in PrimeSet.cofinite_excluding([2])
    True
    """

    cofinite: bool
    primes: frozenset = frozenset()

    def __post_init__(self):
        ps = frozenset(self.primes)
        for p in ps:
            if not is_prime(p):
                raise ValueError(f"{p!r} is not a prime")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def empty(cls) -> PrimeSet:
        return cls(False, frozenset())

    @classmethod
    def all(cls) -> PrimeSet:
        return cls(True, frozenset())

    @classmethod
    def finite(cls, primes: Iterable[int]) -> PrimeSet:
        return cls(False, frozenset(primes))

    @classmethod
    def cofinite_excluding(cls, primes: Iterable[int]) -> PrimeSet:
        return cls(True, frozenset(primes))

    def __contains__(self, p: int) -> bool:
        return (p not in self.primes) if self.cofinite else (p in self.primes)

    @property
    def is_finite(self) -> bool:
        return not self.cofinite

    def is_empty(self) -> bool:
        return not self.cofinite and not self.primes

    def is_all(self) -> bool:
        return self.cofinite and not self.primes

    def complement(self) -> PrimeSet:
        return PrimeSet(not self.cofinite, self.primes)

    def without(self, *ps: int) -> PrimeSet:
        return self & PrimeSet.cofinite_excluding(ps)

    def __and__(self, other: PrimeSet) -> PrimeSet:
        a, b = self, other
        if a.cofinite and b.cofinite:
            return PrimeSet(True, a.primes | b.primes)
        if a.cofinite:
            a, b = b, a
        if b.cofinite:
            return PrimeSet(False, a.primes - b.primes)
        return PrimeSet(False, a.primes & b.primes)

    def __or__(self, other: PrimeSet) -> PrimeSet:
        return (self.complement() & other.complement()).complement()

    def __sub__(self, other: PrimeSet) -> PrimeSet:
        return self & other.complement()

    def issubset(self, other: PrimeSet) -> bool:
        return (self - other).is_empty()

    def __iter__(self) -> Iterator[int]:
        if self.cofinite:
            raise ValueError("cannot enumerate a cofinite prime set")
        return iter(sorted(self.primes))

    def members(self, limit: int) -> list[int]:
        """The first `limit` members in increasing order."""
        if not self.cofinite:
            return sorted(self.primes)[:limit]
        out = []
        for p in primes_from(2):
            if len(out) >= limit:
                break
            if p not in self.primes:
                out.append(p)
        return out

    def smallest(self) -> int | None:
        m = self.members(1)
        return m[0] if m else None

    def __str__(self) -> str:
        body = ",".join(str(p) for p in sorted(self.primes))
        if self.cofinite:
            return "P" if not self.primes else "P\\{" + body + "}"
        return "{" + body + "}"
