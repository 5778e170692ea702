"""Arithmetic of Baer types: telescope multipliers and the unit cokernel.

A rank-one group S of type (k_p) is the colimit of
``Z --a1--> Z --a2--> Z --> ...`` where the multipliers come from
listing every prime power p^j with j <= k_p in increasing order and
recording the prime each one is a power of.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterator

from .groups import (INF, BaerType, Cyclic, FormalSum, GroupExpr, Prufer, Sum,
                     normalize)
from .primes import PrimeSet, primes_from


@dataclass(frozen=True)
class TelescopePrefix:
    multipliers: tuple
    mseq: tuple
    exhausted: bool = False

    def __len__(self) -> int:
        return len(self.multipliers)

    def product(self) -> int:
        return math.prod(self.multipliers)

    def __str__(self) -> str:
        s = "S^1"
        for a in self.multipliers:
            s += f" --{a}--> S^1"
        if not self.exhausted:
            s += " --> ..."
        return s

    def as_dict(self) -> dict:
        return {"multipliers": list(self.multipliers), "mseq": list(self.mseq),
                "exhausted": self.exhausted}


def prime_powers(t: BaerType) -> Iterator[tuple]:
    """Yield ``(p**j, p)`` for all j <= k_p, in increasing order of p**j."""
    heap = []
    for p, v in t.exceptions:
        if v >= 1:
            heap.append((p, p, 1))
    heapq.heapify(heap)
    tail_primes = None
    if t.tail >= 1:
        tail_primes = (p for p in primes_from(2) if p not in t.exception_primes)
        next_tail = next(tail_primes)
    while True:
        # a tail prime enters the heap as soon as it could be the minimum
        if tail_primes is not None and (not heap or heap[0][0] > next_tail):
            heapq.heappush(heap, (next_tail, next_tail, 1))
            next_tail = next(tail_primes)
            continue
        if not heap:
            return
        m, p, j = heapq.heappop(heap)
        yield m, p
        if j + 1 <= t.value_at(p):
            heapq.heappush(heap, (m * p, p, j + 1))


def telescope_prefix(t: BaerType, n: int) -> TelescopePrefix:
    """The first ``n`` multipliers of the telescope for type ``t``.

    When the type admits fewer than ``n`` prime powers the whole finite
    telescope is returned with ``exhausted=True``.

    >>> telescope_prefix(BaerType(tail=INF), 6).mseq
    (2, 3, 4, 5, 7, 8)
    """
    if n < 0:
        raise ValueError("prefix length must be >= 0")
    alphas, ms = [], []
    it = prime_powers(t)
    for _ in range(n):
        try:
            m, p = next(it)
        except StopIteration:
            return TelescopePrefix(tuple(alphas), tuple(ms), exhausted=True)
        alphas.append(p)
        ms.append(m)
    exhausted = t.total_finite_height() != INF and t.total_finite_height() <= n
    return TelescopePrefix(tuple(alphas), tuple(ms), exhausted=exhausted)


def available_length(t: BaerType) -> float:
    """Number of multipliers in the full telescope (INF for most types)."""
    return t.total_finite_height()


def cokernel_of_unit_inclusion(t: BaerType) -> GroupExpr:
    """Cokernel of Z -> S, the inclusion of 1 into the group of type ``t``.

    >>> print(cokernel_of_unit_inclusion(BaerType({3: INF})))
    Z(3^inf)
    >>> print(cokernel_of_unit_inclusion(BaerType({2: 3})))
    Z/8
    """
    parts = []
    for p, v in t.exceptions:
        if v == INF:
            parts.append(Prufer(p))
        elif v > 0:
            parts.append(Cyclic(p, v))
    if t.tail != 0:
        family = "Z(p^inf)" if t.tail == INF else ("Z/p" if t.tail == 1 else f"Z/p^{t.tail}")
        parts.append(FormalSum(family, PrimeSet.cofinite_excluding(t.exception_primes)))
    return normalize(Sum(parts))


def baer_equiv(t1: BaerType, t2: BaerType) -> bool:
    """Do the types define isomorphic groups?

    They must agree at almost all primes and may differ only by finite
    amounts where both are finite.

    >>> baer_equiv(BaerType({3: INF}), BaerType({3: INF, 2: 1}))
    True
    >>> baer_equiv(BaerType(tail=1), BaerType())
    False
    """
    if t1.tail != t2.tail:
        return False
    for p in t1.exception_primes | t2.exception_primes:
        if (t1.value_at(p) == INF) != (t2.value_at(p) == INF):
            return False
    return True
