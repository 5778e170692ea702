"""Brute-force ground truth for finite abelian groups.

Groups are products of cyclic groups of prime-power order.  Elements are
enumerated explicitly as coordinate vectors; subgroups are boolean masks
over that enumeration.  Structure is always read off from element counts:
if c_k is the number of elements killed by p^k, the number of cyclic
p-factors of order at least p^k is log_p(c_k / c_{k-1}).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct

import numpy as np
from sympy import factorint
from sympy.utilities.iterables import partitions

from .groups import Cyclic, FragmentError, GroupExpr, Sum, normalize, summands, to_text
from .smith import smith_normal_form

DEFAULT_BOUND = 2 ** 16


class OracleBoundError(ValueError):
    pass


@lru_cache(maxsize=None)
def _prime_power(q: int) -> tuple:
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    return next(iter(f.items()))


@dataclass(frozen=True, order=True)
class FiniteAb:
    orders: tuple = ()

    def __post_init__(self):
        for q in self.orders:
            _prime_power(q)
        object.__setattr__(self, "orders", tuple(sorted(self.orders, key=_pp_key)))

    @property
    def size(self) -> int:
        n = 1
        for q in self.orders:
            n *= q
        return n

    def to_group(self) -> GroupExpr:
        return normalize(Sum([Cyclic(*_prime_power(q)) for q in self.orders]))

    @staticmethod
    def from_group(g: GroupExpr) -> FiniteAb:
        orders = []
        for s in summands(g):
            if not isinstance(s, Cyclic):
                raise FragmentError(f"{to_text(g)} is not finite")
            orders.append(s.order)
        return FiniteAb(tuple(orders))

    def __str__(self) -> str:
        return to_text(self.to_group())


def _pp_key(q):
    p, k = _prime_power(q)
    return (p, k)


# ---------------------------------------------------------------------------
# Element-level machinery


class _Ambient:
    """All elements of a finite abelian group with vectorized arithmetic."""

    def __init__(self, orders: tuple):
        self.orders = np.array(orders, dtype=np.int64)
        self.size = int(np.prod(self.orders)) if orders else 1
        if orders:
            grids = np.indices(tuple(orders)).reshape(len(orders), -1).T
        else:
            grids = np.zeros((1, 0), dtype=np.int64)
        self.elems = grids.astype(np.int64)
        strides = np.ones(len(orders), dtype=np.int64)
        for i in range(len(orders) - 2, -1, -1):
            strides[i] = strides[i + 1] * orders[i + 1]
        self.strides = strides
        self.primes = sorted({_prime_power(q)[0] for q in orders})

    def encode(self, vecs: np.ndarray) -> np.ndarray:
        return (vecs % self.orders) @ self.strides if len(self.orders) else np.zeros(len(vecs), dtype=np.int64)

    def times(self, m: int) -> np.ndarray:
        """Index of m*x for every element x."""
        return self.encode(self.elems * m)

    def plus(self, g_index: int) -> np.ndarray:
        return self.encode(self.elems + self.elems[g_index])

    def zero_mask(self) -> np.ndarray:
        z = np.zeros(self.size, dtype=bool)
        z[0] = True
        return z

    def generate(self, base: np.ndarray, gens) -> np.ndarray:
        """Subgroup generated by the subgroup ``base`` and elements ``gens``."""
        h = base.copy()
        for g in gens:
            if h[g]:
                continue
            shift = self.plus(int(g))
            while True:
                new = h.copy()
                new[shift[h]] = True
                if new.sum() == h.sum():
                    break
                h = new
        return h

    def structure(self, members: np.ndarray, modulo: np.ndarray | None = None) -> FiniteAb:
        """Structure of members/modulo (both subgroups, modulo inside members)."""
        if modulo is None:
            modulo = self.zero_mask()
        msize = int(modulo.sum())
        orders = []
        for p in self.primes:
            levels, pk = [1], 1
            while True:
                pk *= p
                c = int((members & modulo[self.times(pk)]).sum()) // msize
                if c == levels[-1]:
                    break
                levels.append(c)
            orders += _orders_from_levels(p, levels)
        return FiniteAb(tuple(orders))


def _orders_from_levels(p: int, levels: list) -> list:
    """Cyclic factors from levels[k] = |X[p^k]| (levels[0] = 1)."""
    ge = []
    for j in range(1, len(levels)):
        r, e = levels[j] // levels[j - 1], 0
        while r > 1:
            r //= p
            e += 1
        ge.append(e)
    ge.append(0)
    out = []
    for j in range(1, len(ge)):
        out += [p ** j] * (ge[j - 1] - ge[j])
    return out


@lru_cache(maxsize=4096)
def _ambient(orders: tuple) -> _Ambient:
    return _Ambient(orders)


@lru_cache(maxsize=None)
def _kernel_structure(orders: tuple, m: int) -> FiniteAb:
    amb = _ambient(orders)
    return amb.structure(amb.times(m) == 0)


@lru_cache(maxsize=None)
def _cokernel_structure(orders: tuple, m: int) -> FiniteAb:
    amb = _ambient(orders)
    image = np.zeros(amb.size, dtype=bool)
    image[amb.times(m)] = True
    return amb.structure(np.ones(amb.size, dtype=bool), image)


def _merge(parts) -> FiniteAb:
    out = []
    for f in parts:
        out.extend(f.orders)
    return FiniteAb(tuple(out))


def _check_bound(a: FiniteAb, b: FiniteAb, bound: int):
    if a.size * b.size > bound:
        raise OracleBoundError(f"|a|*|b| = {a.size * b.size} exceeds the oracle bound {bound}")


def finite_bifunctor(kind: str, a: FiniteAb, b: FiniteAb, bound: int = DEFAULT_BOUND) -> FiniteAb:
    """hom/ext/tensor/tor of finite groups by element enumeration.

    A is split into its cyclic factors Z/q; each contributes B[q]
    (hom, tor) or B/qB (ext, tensor), computed by enumerating B.

    >>> str(finite_bifunctor("hom", FiniteAb((4,)), FiniteAb((2, 3))))
    'Z/2'
    """
    _check_bound(a, b, bound)
    if kind in ("hom", "tor"):
        return _merge(_kernel_structure(b.orders, q) for q in a.orders)
    if kind in ("ext", "tensor"):
        return _merge(_cokernel_structure(b.orders, q) for q in a.orders)
    raise ValueError(f"unknown bifunctor {kind!r}")


def hom_by_enumeration(a: FiniteAb, b: FiniteAb, bound: int = 4096) -> FiniteAb:
    """Hom(a, b) by listing every generator assignment that respects the relations.

    The hom group's structure is read off by counting homs killed by p^k.
    """
    amb = _ambient(b.orders)
    candidates = []
    for q in a.orders:
        candidates.append(np.nonzero(amb.times(q) == 0)[0])
    total = 1
    for c in candidates:
        total *= len(c)
    if total > bound:
        raise OracleBoundError(f"{total} homomorphisms exceed the enumeration bound {bound}")
    homs = list(iproduct(*[list(c) for c in candidates]))
    primes = sorted({_prime_power(q)[0] for q in a.orders + b.orders})
    orders = []
    for p in primes:
        levels, pk = [1], 1
        while True:
            pk *= p
            t = amb.times(pk)
            c = sum(1 for f in homs if all(t[x] == 0 for x in f))
            if c == levels[-1]:
                break
            levels.append(c)
        orders += _orders_from_levels(p, levels)
    return FiniteAb(tuple(orders))


def tensor_by_presentation(a: FiniteAb, b: FiniteAb) -> FiniteAb:
    """a (x) b as the cokernel of the Kronecker presentation, read off by SNF."""
    ra, rb = len(a.orders), len(b.orders)
    n = ra * rb
    if n == 0:
        return FiniteAb(())
    rows = []
    for i, j in iproduct(range(ra), range(rb)):
        for order in (a.orders[i], b.orders[j]):
            r = [0] * n
            r[i * rb + j] = order
            rows.append(r)
    snf = smith_normal_form(rows)
    out = []
    for d in snf.divisors:
        if d > 1:
            out.extend(p ** k for p, k in factorint(d).items())
    return FiniteAb(tuple(out))


# ---------------------------------------------------------------------------
# Radicals


@dataclass(frozen=True)
class FiniteRadical:
    radical: FiniteAb
    reduction: FiniteAb
    stages: int
    mask: tuple


def _radical_mask(g_orders: tuple, n_orders: tuple):
    amb = _ambient(n_orders)
    s = amb.zero_mask()
    stages = 0
    mults = [amb.times(q) for q in sorted(set(g_orders))]
    while True:
        # elements of N/S killed by some cyclic factor of G generate all images of G
        hit = np.zeros(amb.size, dtype=bool)
        for t in mults:
            hit |= s[t]
        new = amb.generate(s, np.nonzero(hit & ~s)[0])
        if (new == s).all():
            return s, stages
        s = new
        stages += 1


@lru_cache(maxsize=None)
def _finite_radical(g_orders: frozenset, n_orders: tuple) -> FiniteRadical:
    amb = _ambient(n_orders)
    s, stages = _radical_mask(tuple(sorted(g_orders)), n_orders)
    return FiniteRadical(amb.structure(s), amb.structure(np.ones(amb.size, dtype=bool), s),
                         stages, tuple(np.nonzero(s)[0].tolist()))


def finite_radical(g: FiniteAb, n: FiniteAb, bound: int = DEFAULT_BOUND) -> FiniteRadical:
    """Fixed point of the image-sum iteration S -> S + (images of G in N/S).

    >>> r = finite_radical(FiniteAb((2,)), FiniteAb((8,)))
    >>> str(r.radical), r.stages
    ('Z/8', 3)
    """
    _check_bound(g, n, bound)
    return _finite_radical(frozenset(g.orders), n.orders)


def all_subgroups(n: FiniteAb, limit: int = 64) -> list:
    """Every subgroup of ``n`` as a boolean mask (only for |n| <= limit)."""
    if n.size > limit:
        raise OracleBoundError(f"subgroup enumeration capped at order {limit}")
    return list(_subgroups(n.orders))


@lru_cache(maxsize=256)
def _subgroups(orders: tuple) -> tuple:
    amb = _ambient(orders)
    start = amb.zero_mask()
    seen = {start.tobytes(): start}
    frontier = [start]
    while frontier:
        nxt = []
        for h in frontier:
            for x in np.nonzero(~h)[0]:
                k = amb.generate(h, [x])
                key = k.tobytes()
                if key not in seen:
                    seen[key] = k
                    nxt.append(k)
        frontier = nxt
    for k in seen.values():
        k.flags.writeable = False
    return tuple(seen.values())


def radical_is_minimal(g: FiniteAb, n: FiniteAb, limit: int = 64) -> bool:
    """Check that the radical lies in every S with Hom(G, N/S) = 0 and has that property."""
    amb = _ambient(n.orders)
    r = np.zeros(amb.size, dtype=bool)
    r[list(finite_radical(g, n).mask)] = True
    mults = [amb.times(q) for q in set(g.orders)]

    def hom_vanishes(s):
        return all((s[t] <= s).all() for t in mults)

    if not hom_vanishes(r):
        return False
    return all((r <= s).all() for s in all_subgroups(n, limit) if hom_vanishes(s))


def generated_by_bounded_orders(n: FiniteAb, bounds: dict, bound: int = DEFAULT_BOUND) -> bool:
    """Is ``n`` generated by its elements of order p^l, l <= bounds[p]?

    >>> generated_by_bounded_orders(FiniteAb((9,)), {3: 1})
    False
    """
    if n.size > bound:
        raise OracleBoundError(f"|n| = {n.size} exceeds the oracle bound {bound}")
    amb = _ambient(n.orders)
    gens = np.zeros(amb.size, dtype=bool)
    for p, k in bounds.items():
        mask = _is_p_element(amb, p)
        if k != float("inf"):
            mask &= amb.times(p ** k) == 0
        gens |= mask
    h = amb.generate(amb.zero_mask(), np.nonzero(gens)[0])
    return bool(h.all())


def _is_p_element(amb: _Ambient, p: int) -> np.ndarray:
    pk = 1
    while amb.size % (pk * p) == 0:
        pk *= p
    return amb.times(pk) == 0


# ---------------------------------------------------------------------------
# Sweep


def groups_up_to(bound: int) -> list:
    """Every finite abelian group of order <= bound, once each up to isomorphism."""
    out = []
    for n in range(1, bound + 1):
        f = factorint(n)
        per_prime = []
        for p, e in sorted(f.items()):
            opts = []
            for part in partitions(e):
                orders = []
                for k, mult in part.items():
                    orders += [p ** k] * mult
                opts.append(orders)
            per_prime.append(opts)
        for combo in iproduct(*per_prime):
            out.append(FiniteAb(tuple(q for c in combo for q in c)))
    return out


def sweep(bound: int = 256, kinds=("hom", "ext", "tensor", "tor", "radical"),
          limit_pairs: int | None = None) -> dict:
    """Compare the symbolic engine with the oracle on all pairs of order <= bound."""
    from .homalg import bifunctor
    from .radical import radical

    start = time.perf_counter()
    groups = groups_up_to(bound)
    exprs = [g.to_group() for g in groups]
    mismatches, checks, pairs = [], 0, 0
    for i, a in enumerate(groups):
        for j, b in enumerate(groups):
            if limit_pairs is not None and pairs >= limit_pairs:
                break
            pairs += 1
            for kind in kinds:
                if kind == "radical":
                    sym = radical(exprs[i], exprs[j])
                    orc = _finite_radical(frozenset(a.orders), b.orders)
                    ok = (hasattr(sym, "radical_subgroup")
                          and _finite_or_none(sym.radical_subgroup) == orc.radical
                          and _finite_or_none(sym.reduction) == orc.reduction
                          and sym.stages == orc.stages)
                else:
                    sym = bifunctor(kind, exprs[i], exprs[j])
                    orc = finite_bifunctor(kind, a, b, bound=bound * bound)
                    ok = isinstance(sym, GroupExpr) and _finite_or_none(sym) == orc
                checks += 1
                if not ok:
                    if kind == "radical":
                        got = sym.as_dict() if hasattr(sym, "as_dict") else str(sym)
                        want = {"radical": str(orc.radical), "reduction": str(orc.reduction),
                                "stages": orc.stages}
                    else:
                        got, want = str(sym), str(orc)
                    mismatches.append({"kind": kind, "a": str(a), "b": str(b),
                                       "symbolic": got, "oracle": want})
    return {"bound": bound, "groups": len(groups), "pairs": pairs, "checks": checks,
            "mismatches": mismatches, "seconds": round(time.perf_counter() - start, 2)}


def _finite_or_none(g: GroupExpr):
    try:
        return FiniteAb.from_group(g)
    except FragmentError:
        return None
