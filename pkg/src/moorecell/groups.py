"""Symbolic abelian groups in a decidable fragment.

The input fragment is built from the infinite cyclic group ``Z``, the
primary cyclic groups ``Z/p^k``, the Prufer groups ``Z(p^inf)``, the
rank-one torsion-free groups (subgroups of the rationals containing 1,
given by their Baer type), finite direct sums of these, and free
products of such sums (only at the outermost level).

A handful of extended constructors (p-adic integers, formal products,
formal quotients, formal colimits) occur only as *outputs* of the
homological and cellularization routines.

All values are immutable and hashable.  Isomorphism on the fragment is
syntactic equality after :func:`normalize`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Union

from sympy import factorint

from .primes import PrimeSet, is_prime

INF = math.inf

Exp = Union[int, float]  # a natural number or INF


class FragmentError(ValueError):
    """Raised when a group lies outside the fragment an operation accepts."""


def _check_exp(v, what="exponent") -> Exp:
    if v == INF:
        return INF
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ValueError(f"{what} must be a natural number or inf, got {v!r}")
    return v


def exp_text(v: Exp) -> str:
    return "inf" if v == INF else str(v)


# ---------------------------------------------------------------------------
# Baer types


@dataclass(frozen=True)
class BaerType:
    """An eventually constant sequence ``(k_2, k_3, k_5, ...)``.

    ``exceptions`` lists the primes whose value differs from ``tail``;
    the representation is kept minimal, so an exception equal to the
    tail is dropped on construction.

    >>> BaerType({3: INF}).value_at(3), BaerType({3: INF}).value_at(5)
    (inf, 0)
    >>> BaerType({2: 1}, tail=1) == BaerType(tail=1)
    True
    """

    exceptions: tuple = ()
    tail: Exp = 0

    def __init__(self, exceptions=(), tail: Exp = 0):
        items = dict(exceptions) if not isinstance(exceptions, dict) else exceptions
        tail = _check_exp(tail, "tail")
        clean = {}
        for p, v in items.items():
            if not is_prime(p):
                raise ValueError(f"{p!r} is not a prime")
            v = _check_exp(v)
            if v != tail:
                clean[p] = v
        object.__setattr__(self, "exceptions", tuple(sorted(clean.items())))
        object.__setattr__(self, "tail", tail)

    def value_at(self, p: int) -> Exp:
        for q, v in self.exceptions:
            if q == p:
                return v
        return self.tail

    @property
    def exception_primes(self) -> frozenset:
        return frozenset(p for p, _ in self.exceptions)

    def primes_with(self, pred) -> PrimeSet:
        """The set of primes whose value satisfies ``pred``."""
        hits = {p for p, v in self.exceptions if pred(v)}
        if pred(self.tail):
            return PrimeSet.cofinite_excluding(self.exception_primes - hits)
        return PrimeSet.finite(hits)

    def infinite_primes(self) -> PrimeSet:
        return self.primes_with(lambda v: v == INF)

    def total_finite_height(self) -> Exp:
        """Sum of all k_p when finite; INF otherwise."""
        if self.tail != 0:
            return INF
        vals = [v for _, v in self.exceptions]
        return INF if INF in vals else sum(vals)

    def is_zero(self) -> bool:
        return self.tail == 0 and not self.exceptions

    def is_subring(self) -> bool:
        """True when the group is a localization Z[J^-1] (values in {0, inf})."""
        return self.tail in (0, INF) and all(v in (0, INF) for _, v in self.exceptions)

    def is_free(self) -> bool:
        """True when the group is infinite cyclic (finite total height)."""
        return self.total_finite_height() != INF

    def combine(self, other: BaerType, op) -> BaerType:
        ps = self.exception_primes | other.exception_primes
        return BaerType({p: op(self.value_at(p), other.value_at(p)) for p in ps},
                        tail=op(self.tail, other.tail))

    def __add__(self, other: BaerType) -> BaerType:
        return self.combine(other, lambda a, b: a + b)

    def sort_key(self):
        big = float("inf")
        return (big if self.tail == INF else self.tail,
                tuple((p, big if v == INF else v) for p, v in self.exceptions))

    def __str__(self) -> str:
        return type_text(self)


def type_text(t: BaerType) -> str:
    parts = [exp_text(t.tail)] + [f"{p}:{exp_text(v)}" for p, v in t.exceptions]
    return "type(" + "; ".join(parts) + ")"


# ---------------------------------------------------------------------------
# Expressions


class GroupExpr:
    """Base class of every group expression."""

    extended = False

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, repr=True)
class Trivial(GroupExpr):
    pass


@dataclass(frozen=True)
class Int(GroupExpr):
    pass


@dataclass(frozen=True)
class Cyclic(GroupExpr):
    """``Z/p^k`` with p prime and k >= 1."""

    p: int
    k: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"Cyclic: {self.p!r} is not a prime")
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"Cyclic: exponent must be >= 1, got {self.k!r}")

    @property
    def order(self) -> int:
        return self.p ** self.k


@dataclass(frozen=True)
class Prufer(GroupExpr):
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"Prufer: {self.p!r} is not a prime")


@dataclass(frozen=True)
class RankOne(GroupExpr):
    """The subgroup of Q containing 1 with the given Baer type."""

    t: BaerType


@dataclass(frozen=True)
class Sum(GroupExpr):
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))


@dataclass(frozen=True)
class FreeProduct(GroupExpr):
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))


# --- extended, output-only forms ---------------------------------------------

_TEMPLATE = re.compile(r"^(Z/p(\^[1-9][0-9]*)?|Z\(p\^inf\)|Zhat\(p\)|Qhat\(p\))$")


def _check_template(factor: str) -> str:
    if not _TEMPLATE.match(factor):
        raise ValueError(f"unknown factor template {factor!r}")
    if factor == "Z/p^1":
        return "Z/p"
    return factor


@dataclass(frozen=True)
class Padic(GroupExpr):
    """The p-adic integers."""

    p: int
    extended = True


@dataclass(frozen=True)
class PadicField(GroupExpr):
    """The p-adic numbers."""

    p: int
    extended = True


@dataclass(frozen=True)
class FormalQuotient(GroupExpr):
    """``num / den`` for a canonical embedding the context makes clear."""

    num: GroupExpr
    den: GroupExpr
    extended = True


@dataclass(frozen=True)
class FormalProduct(GroupExpr):
    """``Prod_{p in primes} factor(p)`` for a factor template such as ``Z/p``."""

    factor: str
    primes: PrimeSet
    extended = True

    def __post_init__(self):
        object.__setattr__(self, "factor", _check_template(self.factor))


@dataclass(frozen=True)
class FormalSum(GroupExpr):
    """``Sum_{p in primes} factor(p)``, a direct sum over a prime set."""

    factor: str
    primes: PrimeSet
    extended = True

    def __post_init__(self):
        object.__setattr__(self, "factor", _check_template(self.factor))


@dataclass(frozen=True)
class IndexedSum(GroupExpr):
    """A direct sum of copies of ``base``, one for each nonzero element of ``index``."""

    index: GroupExpr
    base: GroupExpr
    extended = True


@dataclass(frozen=True)
class FormalColimit(GroupExpr):
    """A colimit left symbolic: ``colim[tag; index; base]``."""

    tag: str
    index: GroupExpr
    base: GroupExpr
    extended = True


EXTENDED_TYPES = (Padic, PadicField, FormalQuotient, FormalProduct, FormalSum,
                  IndexedSum, FormalColimit)
PRIMITIVE_TYPES = (Trivial, Int, Cyclic, Prufer, RankOne)


def is_extended(g: GroupExpr) -> bool:
    """True when an extended constructor occurs anywhere in ``g``."""
    if g.extended:
        return True
    if isinstance(g, Sum):
        return any(is_extended(t) for t in g.terms)
    if isinstance(g, FreeProduct):
        return any(is_extended(t) for t in g.factors)
    return False


def instantiate(factor: str, p: int) -> GroupExpr:
    if factor == "Z(p^inf)":
        return Prufer(p)
    if factor == "Zhat(p)":
        return Padic(p)
    if factor == "Qhat(p)":
        return PadicField(p)
    k = int(factor.split("^")[1]) if "^" in factor else 1
    return Cyclic(p, k)


# ---------------------------------------------------------------------------
# Constructors


Z = Int()
ZERO = Trivial()
Q = RankOne(BaerType(tail=INF))


def cyclic(n: int) -> GroupExpr:
    """``Z/n`` as a primary-decomposed expression.

    >>> print(cyclic(12))
    Z/4 + Z/3
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"Z/n needs n >= 1, got {n!r}")
    parts = [Cyclic(p, k) for p, k in sorted(factorint(n).items())]
    if not parts:
        return ZERO
    return parts[0] if len(parts) == 1 else Sum(parts)


def localization(*primes: int) -> GroupExpr:
    """``Z[1/p, ...]``; with no primes this is ``Z``."""
    if not primes:
        return Z
    return RankOne(BaerType({p: INF for p in primes}))


def rank_one(exceptions=(), tail: Exp = 0) -> GroupExpr:
    return normalize(RankOne(BaerType(exceptions, tail)))


def direct_sum(*gs: GroupExpr) -> GroupExpr:
    return normalize(Sum(gs))


# ---------------------------------------------------------------------------
# Normalization


def _rank(g: GroupExpr) -> int:
    order = {Trivial: 0, Int: 1, Cyclic: 2, Prufer: 3, RankOne: 4}
    return order.get(type(g), 10)


def sort_key(g: GroupExpr):
    if isinstance(g, Cyclic):
        return (2, g.p, g.k)
    if isinstance(g, Prufer):
        return (3, g.p)
    if isinstance(g, RankOne):
        return (4, g.t.sort_key())
    if isinstance(g, (Trivial, Int)):
        return (_rank(g),)
    return (10, to_text(g))


def normalize(g: GroupExpr) -> GroupExpr:
    """Canonical form: flattened, sorted sums without trivial summands.

    >>> print(normalize(Sum([Cyclic(3, 1), Sum([Trivial(), Cyclic(2, 1)])])))
    Z/2 + Z/3
    """
    if isinstance(g, RankOne):
        return Z if g.t.is_zero() else g
    if isinstance(g, Sum):
        flat = []
        for t in g.terms:
            t = normalize(t)
            if isinstance(t, FreeProduct):
                raise FragmentError("a free product cannot be a direct summand")
            if isinstance(t, Sum):
                flat.extend(t.terms)
            elif not isinstance(t, Trivial):
                flat.append(t)
        flat.sort(key=sort_key)
        if not flat:
            return ZERO
        return flat[0] if len(flat) == 1 else Sum(tuple(flat))
    if isinstance(g, FreeProduct):
        flat = []
        for f in g.factors:
            f = normalize(f)
            if isinstance(f, FreeProduct):
                flat.extend(f.factors)
            elif not isinstance(f, Trivial):
                flat.append(f)
        flat.sort(key=sort_key)
        if not flat:
            return ZERO
        return flat[0] if len(flat) == 1 else FreeProduct(tuple(flat))
    if isinstance(g, (FormalProduct, FormalSum)):
        if g.primes.is_finite:
            # finite products and sums coincide
            return normalize(Sum([instantiate(g.factor, p) for p in g.primes]))
        return g
    if isinstance(g, FormalQuotient):
        num, den = normalize(g.num), normalize(g.den)
        if isinstance(den, Trivial):
            return num
        if isinstance(num, Trivial):
            return ZERO
        return FormalQuotient(num, den)
    if isinstance(g, IndexedSum):
        index, base = normalize(g.index), normalize(g.base)
        if isinstance(index, Trivial) or isinstance(base, Trivial):
            return ZERO
        return IndexedSum(index, base)
    if isinstance(g, FormalColimit):
        return FormalColimit(g.tag, normalize(g.index), normalize(g.base))
    return g


def summands(g: GroupExpr) -> tuple:
    """The summands of the canonical form of ``g`` (empty for the trivial group)."""
    g = normalize(g)
    if isinstance(g, Trivial):
        return ()
    if isinstance(g, Sum):
        return g.terms
    return (g,)


def abelianize(g: GroupExpr) -> GroupExpr:
    """Replace a free product by the direct sum of its factors.

    >>> print(abelianize(FreeProduct([localization(3), Cyclic(3, 1)])))
    Z/3 + Z[1/3]
    """
    if isinstance(g, FreeProduct):
        return normalize(Sum([abelianize(f) for f in g.factors]))
    return normalize(g)


# ---------------------------------------------------------------------------
# Printing


def to_text(g: GroupExpr) -> str:
    if isinstance(g, Trivial):
        return "0"
    if isinstance(g, Int):
        return "Z"
    if isinstance(g, Cyclic):
        return f"Z/{g.order}"
    if isinstance(g, Prufer):
        return f"Z({g.p}^inf)"
    if isinstance(g, RankOne):
        t = g.t
        if t.is_zero():
            return "Z"
        if t.tail == INF and not t.exceptions:
            return "Q"
        if t.tail == 0 and all(v == INF for _, v in t.exceptions):
            return "Z[1/" + ",".join(str(p) for p, _ in t.exceptions) + "]"
        return type_text(t)
    if isinstance(g, Sum):
        return " + ".join(_wrap(t, Sum) for t in g.terms)
    if isinstance(g, FreeProduct):
        return " * ".join(_wrap(t, FreeProduct) for t in g.factors)
    if isinstance(g, Padic):
        return f"Zhat({g.p})"
    if isinstance(g, PadicField):
        return f"Qhat({g.p})"
    if isinstance(g, FormalProduct):
        return f"Prod_{{p in {g.primes}}} {g.factor}"
    if isinstance(g, FormalSum):
        return f"Sum_{{p in {g.primes}}} {g.factor}"
    if isinstance(g, FormalQuotient):
        return f"{_wrap_atom(g.num)}/{_wrap_atom(g.den)}"
    if isinstance(g, IndexedSum):
        return f"Sum_{{{to_text(g.index)}}} {_wrap_atom(g.base)}"
    if isinstance(g, FormalColimit):
        return f"colim[{g.tag}; {to_text(g.index)}; {to_text(g.base)}]"
    raise TypeError(f"not a group expression: {g!r}")


def _wrap(t: GroupExpr, parent) -> str:
    s = to_text(t)
    if parent is Sum and isinstance(t, (FreeProduct,)):
        return f"({s})"
    if parent is FreeProduct and isinstance(t, FreeProduct):
        return f"({s})"
    if isinstance(t, (FormalProduct, FormalSum, IndexedSum)):
        return f"({s})"
    return s


def _wrap_atom(t: GroupExpr) -> str:
    s = to_text(t)
    if isinstance(t, (Sum, FreeProduct, FormalProduct, FormalSum, IndexedSum, FormalQuotient)):
        return f"({s})"
    return s


# ---------------------------------------------------------------------------
# Structure report


def _unique_div(g: GroupExpr) -> PrimeSet:
    if isinstance(g, Trivial):
        return PrimeSet.all()
    if isinstance(g, Int):
        return PrimeSet.empty()
    if isinstance(g, (Cyclic, Prufer)):
        return PrimeSet.cofinite_excluding([g.p])
    if isinstance(g, RankOne):
        return g.t.infinite_primes()
    raise FragmentError(f"unsupported constructor {type(g).__name__}")


def _div(g: GroupExpr) -> PrimeSet:
    if isinstance(g, Prufer):
        return PrimeSet.all()
    return _unique_div(g)


@dataclass(frozen=True)
class StructureReport:
    """Torsion, rank and divisibility data of an abelian fragment group."""

    group: GroupExpr
    is_torsion: bool
    torsion_subgroup: GroupExpr
    torsion_free_part: GroupExpr
    rank: int
    divisible_primes: PrimeSet
    uniquely_divisible_primes: PrimeSet
    _terms: tuple = field(repr=False, default=())

    @property
    def is_divisible(self) -> bool:
        return self.divisible_primes.is_all()

    def is_p_divisible(self, p: int) -> bool:
        return p in self.divisible_primes

    def is_uniquely_p_divisible(self, p: int) -> bool:
        return p in self.uniquely_divisible_primes

    def primary_component(self, p: int) -> GroupExpr:
        return normalize(Sum([t for t in self._terms
                              if isinstance(t, (Cyclic, Prufer)) and t.p == p]))

    def exponent(self, p: int) -> Exp:
        """Exponent of the p-primary torsion: 0, a natural k, or INF."""
        e = 0
        for t in self._terms:
            if isinstance(t, Prufer) and t.p == p:
                return INF
            if isinstance(t, Cyclic) and t.p == p:
                e = max(e, t.k)
        return e

    def torsion_primes(self) -> frozenset:
        return frozenset(t.p for t in self._terms if isinstance(t, (Cyclic, Prufer)))


def classify(g: GroupExpr) -> StructureReport:
    """Structure report of an abelian group in the input fragment.

    >>> r = classify(Prufer(5))
    >>> r.is_torsion, r.is_p_divisible(5), r.is_uniquely_p_divisible(5)
    (True, True, False)
    """
    if isinstance(g, FreeProduct):
        raise FragmentError("classify needs an abelian group; abelianize first")
    if is_extended(g):
        raise FragmentError(f"unsupported constructor in {to_text(g)}")
    terms = summands(g)
    torsion = [t for t in terms if isinstance(t, (Cyclic, Prufer))]
    free = [t for t in terms if isinstance(t, (Int, RankOne))]
    div = PrimeSet.all()
    udiv = PrimeSet.all()
    for t in terms:
        div &= _div(t)
        udiv &= _unique_div(t)
    return StructureReport(
        group=normalize(g),
        is_torsion=not free,
        torsion_subgroup=normalize(Sum(torsion)),
        torsion_free_part=normalize(Sum(free)),
        rank=len(free),
        divisible_primes=div,
        uniquely_divisible_primes=udiv,
        _terms=terms,
    )


def is_torsion(g: GroupExpr) -> bool:
    return classify(g).is_torsion


def is_finite(g: GroupExpr) -> bool:
    return all(isinstance(t, Cyclic) for t in summands(g)) and not is_extended(g) \
        and not isinstance(normalize(g), FreeProduct)


def order(g: GroupExpr) -> int:
    """Order of a finite group."""
    if not is_finite(g):
        raise FragmentError(f"{to_text(g)} is not finite")
    return math.prod(t.order for t in summands(g))


def as_cyclic_order(g: GroupExpr) -> int | None:
    """n if ``g`` is isomorphic to Z/n (distinct primes, no repeats), else None."""
    terms = summands(g)
    if not all(isinstance(t, Cyclic) for t in terms):
        return None
    ps = [t.p for t in terms]
    if len(set(ps)) != len(ps):
        return None
    return math.prod(t.order for t in terms)


def is_subring_of_q(g: GroupExpr) -> bool:
    """True for Z[J^-1] (including Z and Q)."""
    g = normalize(g)
    return isinstance(g, Int) or (isinstance(g, RankOne) and g.t.is_subring())


def rank_one_type(g: GroupExpr) -> BaerType | None:
    g = normalize(g)
    if isinstance(g, Int):
        return BaerType()
    if isinstance(g, RankOne):
        return g.t
    return None


def from_iterable(gs: Iterable[GroupExpr]) -> GroupExpr:
    return normalize(Sum(list(gs)))
