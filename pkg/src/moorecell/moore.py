"""Existence of Moore spaces M(G,1) and explicit two-dimensional models.

Existence for abelian G is the three-clause test: rank of G/T at most
one, each primary component T(p) divisible or divisible plus one cyclic
group, and T(p) (x) G/T = 0.  Models are built only for the classes we
can write down: telescopes of circles for subgroups of Q, cofibers of a
unit for the torsion quotients of those, classical cyclic Moore spaces,
and wedges for free products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .groups import (INF, BaerType, Cyclic, FragmentError, FreeProduct,
                     GroupExpr, Int, Prufer, RankOne, Trivial, classify,
                     cyclic, is_extended, normalize, summands, to_text, type_text)
from .homalg import bifunctor
from .radical import PreconditionError
from .smith import smith_normal_form
from .telescope import (available_length, cokernel_of_unit_inclusion,
                        telescope_prefix)
from .verdict import NO, YES, TrailEntry, Verdict

THM = "Theorem 2.1"


# ---------------------------------------------------------------------------
# Recipes


@dataclass(frozen=True)
class Telescope:
    """Homotopy colimit of S^1 --a1--> S^1 --a2--> ... for a Baer type."""

    t: BaerType

    def __str__(self):
        return f"Telescope({type_text(self.t)})"


@dataclass(frozen=True)
class CofiberOfUnit:
    """Cofiber of S^1 -> M(S,1) hitting 1 in S, for S of type ``t``."""

    t: BaerType

    def __str__(self):
        return f"CofiberOfUnit({type_text(self.t)})"


@dataclass(frozen=True)
class ClassicalCyclic:
    """Cofiber of the degree-n map on the circle."""

    n: int

    def __str__(self):
        return f"ClassicalCyclic({self.n})"


@dataclass(frozen=True)
class Wedge:
    parts: tuple

    def __str__(self):
        return "Wedge(" + ", ".join(str(m.recipe) for m in self.parts) + ")"


@dataclass(frozen=True)
class MooreModel:
    group: GroupExpr
    recipe: object
    dimension: int = 2

    def as_dict(self) -> dict:
        return {"group": to_text(self.group), "recipe": str(self.recipe),
                "dimension": self.dimension}


@dataclass(frozen=True)
class NoRecipe:
    """A Moore space exists but no two-dimensional model is known to us."""

    group: GroupExpr
    reason: str

    def as_dict(self) -> dict:
        return {"group": to_text(self.group), "recipe": None, "reason": self.reason}

    def __str__(self):
        return f"NoRecipe({self.reason})"


def recipe_group(recipe) -> GroupExpr:
    """The fundamental group a recipe realizes."""
    if isinstance(recipe, Telescope):
        return normalize(RankOne(recipe.t))
    if isinstance(recipe, CofiberOfUnit):
        return cokernel_of_unit_inclusion(recipe.t)
    if isinstance(recipe, ClassicalCyclic):
        return cyclic(recipe.n)
    if isinstance(recipe, Wedge):
        return normalize(FreeProduct(tuple(recipe_group(m.recipe) for m in recipe.parts)))
    raise TypeError(f"not a recipe: {recipe!r}")


# ---------------------------------------------------------------------------
# Existence


def _check_input(g: GroupExpr) -> GroupExpr:
    if is_extended(g):
        raise FragmentError(f"unsupported constructor in {to_text(g)}")
    return normalize(g)


def _abelian_clauses(g: GroupExpr):
    """Return (failure witness or None, per-clause notes)."""
    rep = classify(g)
    notes = {"rank": rep.rank}
    if rep.rank > 1:
        return {"clause": 1, "rank": rep.rank,
                "reason": "G/T has rank greater than one"}, notes
    for p in sorted(rep.torsion_primes()):
        cyclics = [s for s in summands(rep.primary_component(p)) if isinstance(s, Cyclic)]
        if len(cyclics) > 1:
            return {"clause": 2, "prime": p, "T(p)": to_text(rep.primary_component(p)),
                    "reason": "T(p) is neither divisible nor divisible plus cyclic"}, notes
    free = rep.torsion_free_part
    for p in sorted(rep.torsion_primes()):
        tp = rep.primary_component(p)
        t = bifunctor("tensor", tp, free)
        if not isinstance(t, Trivial):
            return {"clause": 3, "prime": p, "T(p)": to_text(tp), "G/T": to_text(free),
                    "tensor": to_text(t), "reason": "T(p) (x) G/T is nonzero"}, notes
    return None, notes


_ANCHORS = {
    1: "the torsion-free quotient G/T has rank at most one",
    2: "each T(p) is divisible or divisible plus a cyclic group",
    3: "T(p) tensored with G/T vanishes for every p",
}


def exists_moore(g: GroupExpr) -> Verdict:
    """Does a Moore space M(g, 1) exist?

    The witnesses carry ``dimension_certain``: True exactly when an
    explicit two-dimensional model is available.
    """
    g = _check_input(g)
    if isinstance(g, FreeProduct):
        trail = [TrailEntry("wedge", "Section 3.2",
                            "a wedge of Moore spaces realizes the free product of their groups")]
        factors = {}
        for f in g.factors:
            v = exists_moore(f)
            factors[to_text(f)] = v
            if not v.yes:
                return Verdict(v.answer, v.trail + trail,
                               {"factor": to_text(f), "factor_verdict": v,
                                "construction": "wedge", "dimension_certain": False},
                               v.attempted)
        model = moore_model(g)
        return Verdict(YES, trail, {"construction": "wedge", "factors": factors,
                                    "dimension_certain": isinstance(model, MooreModel)})
    failure, notes = _abelian_clauses(g)
    if failure is not None:
        c = failure["clause"]
        return Verdict(NO, [TrailEntry(f"moore-clause-{c}", THM, _ANCHORS[c])],
                       {**failure, "dimension_certain": False})
    model = _abelian_model(g)
    trail = [TrailEntry(f"moore-clause-{c}", THM, _ANCHORS[c]) for c in (1, 2, 3)]
    w = {"rank": notes["rank"], "dimension_certain": isinstance(model, MooreModel),
         "recipe": str(model.recipe) if isinstance(model, MooreModel) else None}
    if not isinstance(model, MooreModel):
        w["note"] = model.reason
    return Verdict(YES, trail, w)


# ---------------------------------------------------------------------------
# Models


def _cofiber_type(g: GroupExpr) -> BaerType | None:
    """Type t with Z -> S(t) having cokernel g, if g has that shape."""
    values = {}
    for s in summands(g):
        if isinstance(s, Prufer):
            v = INF
        elif isinstance(s, Cyclic):
            v = s.k
        else:
            return None
        if s.p in values:
            return None
        values[s.p] = v
    return BaerType(values)


def _abelian_model(g: GroupExpr):
    if isinstance(g, Trivial):
        return MooreModel(g, ClassicalCyclic(1))
    if isinstance(g, (Int, RankOne)):
        t = g.t if isinstance(g, RankOne) else BaerType()
        return MooreModel(g, Telescope(t))
    terms = summands(g)
    if all(isinstance(s, Cyclic) for s in terms) and len({s.p for s in terms}) == len(terms):
        return MooreModel(g, ClassicalCyclic(math.prod(s.order for s in terms)))
    t = _cofiber_type(g)
    if t is not None:
        return MooreModel(g, CofiberOfUnit(t))
    return NoRecipe(g, "a Moore space exists but no two-dimensional model is known "
                       "(Question 2.4)")


def moore_model(g: GroupExpr):
    """A two-dimensional model for M(g, 1), or a :class:`NoRecipe` value.

    >>> from moorecell.parsing import parse
    >>> print(moore_model(parse("Z[1/3]")).recipe)
    Telescope(type(0; 3:inf))
    """
    g = _check_input(g)
    if isinstance(g, FreeProduct):
        parts = []
        for f in g.factors:
            m = moore_model(f)
            if not isinstance(m, MooreModel):
                return NoRecipe(g, f"no model for the factor {to_text(f)}")
            parts.append(m)
        return MooreModel(g, Wedge(tuple(parts)))
    failure, _ = _abelian_clauses(g)
    if failure is not None:
        raise PreconditionError(f"no Moore space M({to_text(g)},1): {failure['reason']}", failure)
    return _abelian_model(g)


# ---------------------------------------------------------------------------
# Presentation check


@dataclass(frozen=True)
class CheckReport:
    recipe: str
    truncation: int
    matrix: tuple
    divisors: tuple
    rank: int
    injective: bool

    @property
    def passed(self) -> bool:
        return self.injective

    def as_dict(self) -> dict:
        return {"recipe": self.recipe, "truncation": self.truncation,
                "matrix": [list(r) for r in self.matrix], "divisors": list(self.divisors),
                "rank": self.rank, "injective": self.injective}


def check_relations(matrix, label: str = "matrix", truncation: int = 0) -> CheckReport:
    """Is the map of free abelian groups given by the rows of ``matrix`` injective?

    Injective on the relation module means full row rank with no zero
    elementary divisor.
    """
    matrix = tuple(tuple(int(x) for x in r) for r in matrix)
    rows = len(matrix)
    snf = smith_normal_form(matrix) if rows else None
    rank = snf.rank if snf else 0
    divisors = snf.divisors if snf else ()
    return CheckReport(label, truncation, matrix, divisors, rank, rank == rows)


def _telescope_rows(t: BaerType, n: int) -> list:
    prefix = telescope_prefix(t, n)
    rows = []
    for i, a in enumerate(prefix.multipliers):
        r = [0] * (n + 1)
        r[i], r[i + 1] = a, -1
        rows.append(r)
    return rows


def _block(recipe, n: int, strict: bool):
    """(rows, number of generators) for a recipe truncated at ``n`` stages."""
    if isinstance(recipe, ClassicalCyclic):
        return [[recipe.n]], 1
    if isinstance(recipe, (Telescope, CofiberOfUnit)):
        avail = available_length(recipe.t)
        if n > avail:
            if strict:
                raise ValueError(f"truncation {n} exceeds the {avail} telescope stages of "
                                 f"{type_text(recipe.t)}")
            n = int(avail)
        rows = _telescope_rows(recipe.t, n)
        if isinstance(recipe, CofiberOfUnit):
            rows.append([1] + [0] * n)
        return rows, n + 1
    if isinstance(recipe, Wedge):
        # finite telescopes inside a wedge are used in full
        blocks = [_block(m.recipe, n, False) for m in recipe.parts]
        width = sum(w for _, w in blocks)
        out, col = [], 0
        for rows, w in blocks:
            out += [[0] * col + list(r) + [0] * (width - col - w) for r in rows]
            col += w
        return out, width
    raise TypeError(f"not a recipe: {recipe!r}")


def relation_matrix(recipe, n: int) -> list:
    """Truncated boundary matrix of a recipe (rows are relations)."""
    return _block(recipe, n, True)[0]


def presentation_check(m: MooreModel, n: int) -> CheckReport:
    """Build the truncated relation matrix of ``m`` and test injectivity by SNF.

    >>> from moorecell.parsing import parse
    >>> presentation_check(moore_model(parse("Z[1/2]")), 3).matrix
    ((2, -1, 0, 0), (0, 2, -1, 0), (0, 0, 2, -1))
    """
    if n < 0:
        raise ValueError("truncation must be >= 0")
    rows = relation_matrix(m.recipe, n)
    return check_relations(rows, str(m.recipe), n)
