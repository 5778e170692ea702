"""Symbolic descriptors for the spaces the decision engine reasons about.

A descriptor carries just the algebraic data the characterization
theorems look at: the fundamental group, homology profile, second
homotopy group and the simply-connected / nilpotent flags.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import (ZERO, Cyclic, GroupExpr, Int, Prufer, RankOne, Trivial,
                     abelianize, is_extended, normalize, summands, to_text)
from .primes import PrimeSet


class SpaceDesc:
    def __str__(self) -> str:
        return space_text(self)


@dataclass(frozen=True)
class EM(SpaceDesc):
    """Eilenberg-Mac Lane space K(a, n)."""

    a: GroupExpr
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("K(A,n) needs n >= 1")
        object.__setattr__(self, "a", normalize(self.a))


@dataclass(frozen=True)
class Sphere(SpaceDesc):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("S^n needs n >= 1")


@dataclass(frozen=True)
class MooreSpace(SpaceDesc):
    g: GroupExpr
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("M(G,n) needs n >= 1")
        object.__setattr__(self, "g", normalize(self.g))


@dataclass(frozen=True)
class Point(SpaceDesc):
    pass


@dataclass(frozen=True)
class Generic(SpaceDesc):
    """A space known only through a homotopy/homology profile.

    ``homology[i]`` is the integral homology in degree ``i + 1``.
    """

    pi1: GroupExpr = ZERO
    simply_connected: bool = False
    nilpotent: bool = False
    homology: tuple = ()
    pi2: GroupExpr | None = None

    def __post_init__(self):
        pi1 = normalize(self.pi1)
        object.__setattr__(self, "pi1", pi1)
        object.__setattr__(self, "homology", tuple(normalize(h) for h in self.homology))
        if self.pi2 is not None:
            object.__setattr__(self, "pi2", normalize(self.pi2))
        if self.simply_connected and not isinstance(pi1, Trivial):
            raise ValueError("a simply connected space has trivial pi1")


@dataclass(frozen=True)
class FormalFiber(SpaceDesc):
    source: SpaceDesc
    target: SpaceDesc


@dataclass(frozen=True)
class Completion(SpaceDesc):
    """The product over p in ``primes`` of the p-completions of ``space``."""

    space: SpaceDesc
    primes: PrimeSet


@dataclass(frozen=True)
class Product(SpaceDesc):
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))


@dataclass(frozen=True)
class TwoStage(SpaceDesc):
    """A two-stage Postnikov space with the given pi1 and pi2."""

    pi1: GroupExpr
    pi2: GroupExpr


def product(*factors: SpaceDesc) -> SpaceDesc:
    """Product with contractible factors removed."""
    keep = [f for f in factors if not _contractible(f)]
    if not keep:
        return Point()
    return keep[0] if len(keep) == 1 else Product(tuple(keep))


def _contractible(x: SpaceDesc) -> bool:
    if isinstance(x, Point):
        return True
    if isinstance(x, (EM, MooreSpace)):
        return isinstance(x.a if isinstance(x, EM) else x.g, Trivial)
    return False


# ---------------------------------------------------------------------------
# Invariants read off a descriptor


def pi1(x: SpaceDesc) -> GroupExpr | None:
    if isinstance(x, Point):
        return ZERO
    if isinstance(x, EM):
        return x.a if x.n == 1 else ZERO
    if isinstance(x, Sphere):
        return Int() if x.n == 1 else ZERO
    if isinstance(x, MooreSpace):
        return x.g if x.n == 1 else ZERO
    if isinstance(x, Generic):
        return x.pi1
    if isinstance(x, TwoStage):
        return x.pi1
    return None


def pi2(x: SpaceDesc) -> GroupExpr | None:
    if isinstance(x, Point):
        return ZERO
    if isinstance(x, EM):
        return x.a if x.n == 2 else ZERO
    if isinstance(x, Sphere):
        return Int() if x.n == 2 else ZERO
    if isinstance(x, MooreSpace):
        if x.n == 1:
            return None
        return x.g if x.n == 2 else ZERO
    if isinstance(x, Generic):
        return x.pi2
    if isinstance(x, TwoStage):
        return x.pi2
    return None


def is_simply_connected(x: SpaceDesc) -> bool | None:
    if isinstance(x, Generic):
        return x.simply_connected
    g = pi1(x)
    if g is None:
        return None
    return isinstance(g, Trivial)


def is_nilpotent(x: SpaceDesc) -> bool:
    if isinstance(x, Generic):
        return x.nilpotent or x.simply_connected
    if isinstance(x, (Point, EM, Sphere)):
        return True
    if isinstance(x, MooreSpace):
        return x.n >= 2
    return False


def _locally_cyclic(a: GroupExpr) -> bool:
    terms = summands(a)
    return len(terms) <= 1 and all(isinstance(t, (Int, Cyclic, Prufer, RankOne)) for t in terms)


def acyclicity_profile(x: SpaceDesc) -> list | None:
    """Groups whose HR-acyclicity is equivalent to that of ``x``.

    For a sphere or Moore space this is the reduced homology; for
    K(A, n) only A matters, placed in degree n: with R a subring of Q
    or a sum of prime fields, K(A, n) is HR-acyclic exactly when A is.
    """
    if isinstance(x, Point):
        return []
    if isinstance(x, EM):
        return [ZERO] * (x.n - 1) + [x.a]
    if isinstance(x, Sphere):
        return [ZERO] * (x.n - 1) + [Int()]
    if isinstance(x, MooreSpace):
        return [ZERO] * (x.n - 1) + [x.g]
    if isinstance(x, Generic):
        return list(x.homology)
    return None


def h2(x: SpaceDesc) -> GroupExpr | None:
    """Second integral homology when the descriptor determines it."""
    if isinstance(x, Point):
        return ZERO
    if isinstance(x, EM):
        if x.n == 2:
            return x.a
        if x.n == 1:
            # H_2 K(A,1) is the exterior square, which vanishes for locally cyclic A
            return ZERO if _locally_cyclic(x.a) else None
        return ZERO
    if isinstance(x, Sphere):
        return Int() if x.n == 2 else ZERO
    if isinstance(x, MooreSpace):
        return x.g if x.n == 2 else ZERO
    if isinstance(x, Generic):
        # degrees beyond the listed profile are zero
        return x.homology[1] if len(x.homology) >= 2 else ZERO
    return None


def groups_in(x: SpaceDesc) -> list:
    """Every group expression mentioned in the descriptor."""
    if isinstance(x, EM):
        return [x.a]
    if isinstance(x, MooreSpace):
        return [x.g]
    if isinstance(x, Generic):
        out = [x.pi1, *x.homology]
        return out + ([x.pi2] if x.pi2 is not None else [])
    if isinstance(x, TwoStage):
        return [x.pi1, x.pi2]
    if isinstance(x, FormalFiber):
        return groups_in(x.source) + groups_in(x.target)
    if isinstance(x, Completion):
        return groups_in(x.space)
    if isinstance(x, Product):
        return [g for f in x.factors for g in groups_in(f)]
    return []


def has_extended(x: SpaceDesc) -> bool:
    if isinstance(x, (FormalFiber, Completion, TwoStage)):
        return True
    return any(is_extended(g) for g in groups_in(x))


def abelian_pi1(x: SpaceDesc) -> GroupExpr | None:
    g = pi1(x)
    return None if g is None else abelianize(g)


# ---------------------------------------------------------------------------
# Printing


def space_text(x: SpaceDesc) -> str:
    if isinstance(x, Point):
        return "pt"
    if isinstance(x, EM):
        return f"K({to_text(x.a)},{x.n})"
    if isinstance(x, Sphere):
        return f"S^{x.n}"
    if isinstance(x, MooreSpace):
        return f"M({to_text(x.g)},{x.n})"
    if isinstance(x, Generic):
        parts = [f"pi1={to_text(x.pi1)}",
                 "H=[" + ", ".join(to_text(h) for h in x.homology) + "]",
                 f"sc={'true' if x.simply_connected else 'false'}",
                 f"nilp={'true' if x.nilpotent else 'false'}"]
        if x.pi2 is not None:
            parts.append(f"pi2={to_text(x.pi2)}")
        return "space{" + "; ".join(parts) + "}"
    if isinstance(x, FormalFiber):
        return f"Fib({space_text(x.source)} -> {space_text(x.target)})"
    if isinstance(x, Completion):
        return f"Prod_{{p in {x.primes}}} ({space_text(x.space)})^_p"
    if isinstance(x, Product):
        return " x ".join(space_text(f) for f in x.factors)
    if isinstance(x, TwoStage):
        return f"P2{{pi1={to_text(x.pi1)}; pi2={to_text(x.pi2)}}}"
    raise TypeError(f"not a space descriptor: {x!r}")
