"""G-radicals, radical and quasi-radical predicates, universal extensions.

T_G N is the smallest subgroup of N with Hom(G, N/T_G N) = 0, reached by
iterating "add the subgroup generated by all images of G".  On the
fragment every primitive summand of N is either swallowed entirely or
left alone, and the radical commutes with finite direct sums, so the
computation is a per-summand table lookup plus a stage count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .coeffs import derive_coeffs
from .groups import (INF, Cyclic, FormalColimit, FragmentError, GroupExpr, Int,
                     IndexedSum, Prufer, RankOne, Sum, Trivial, ZERO, abelianize,
                     is_extended, normalize, summands, to_text)
from .homalg import Unsupported, bifunctor
from .verdict import NO, UNKNOWN, YES, TrailEntry, Verdict


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""

    def __init__(self, message: str, witnesses: dict | None = None):
        super().__init__(message)
        self.witnesses = witnesses or {}


@dataclass(frozen=True)
class RadicalResult:
    radical_subgroup: GroupExpr
    reduction: GroupExpr
    stages: int
    note: str = ""

    def as_dict(self) -> dict:
        return {"radical": to_text(self.radical_subgroup),
                "reduction": to_text(self.reduction),
                "stages": self.stages, "note": self.note}


def _prepare(g: GroupExpr, what: str) -> GroupExpr:
    if is_extended(g):
        raise FragmentError(f"extended constructor in {what} {to_text(g)}")
    return abelianize(g)


@lru_cache(maxsize=65536)
def _primitive_radical(gs: tuple, n: GroupExpr):
    """(swallowed?, stages) for a primitive summand n, or an Unsupported."""
    if isinstance(n, Trivial):
        return True, 0
    if isinstance(n, Cyclic):
        best = 0
        for s in gs:
            if isinstance(s, Int) or (isinstance(s, RankOne) and s.t.value_at(n.p) != INF):
                best = INF
            elif isinstance(s, Cyclic) and s.p == n.p:
                best = max(best, s.k)
        if best == 0:
            return False, 0
        return True, 1 if best == INF else math.ceil(n.k / best)
    if isinstance(n, Prufer):
        if any(isinstance(s, (Int, RankOne)) or s == Prufer(n.p) for s in gs):
            return True, 1
        if any(isinstance(s, Cyclic) and s.p == n.p for s in gs):
            return Unsupported(f"T_G({to_text(n)}) needs a transfinite image-sum iteration")
        return False, 0
    if isinstance(n, (Int, RankOne)):
        for s in gs:
            if isinstance(s, (Int, RankOne)):
                h = bifunctor("hom", s, n)
                if not isinstance(h, Trivial):
                    return True, 1
        return False, 0
    raise FragmentError(f"unsupported summand {to_text(n)}")


def radical(g: GroupExpr, n: GroupExpr) -> RadicalResult | Unsupported:
    """T_G N together with N/T_G N and the number of image-sum stages.

    >>> from moorecell.parsing import parse
    >>> r = radical(parse("Z/2"), parse("Z/8"))
    >>> print(r.radical_subgroup, r.reduction, r.stages)
    Z/8 0 3
    """
    g, n = _prepare(g, "G"), _prepare(n, "N")
    gs = summands(g)
    kept, dropped, stages = [], [], 0
    for x in summands(n):
        res = _primitive_radical(gs, x)
        if isinstance(res, Unsupported):
            return res
        swallowed, k = res
        (kept if swallowed else dropped).append(x)
        stages = max(stages, k)
    return RadicalResult(normalize(Sum(kept)), normalize(Sum(dropped)), stages)


_RADICAL_ANCHOR = "N is G-radical when the radical T_G N is all of N"


def is_radical(g: GroupExpr, n: GroupExpr) -> Verdict:
    r = radical(g, n)
    if isinstance(r, Unsupported):
        return Verdict(UNKNOWN, [], {"reason": r.reason}, attempted=["radical-table"])
    ok = isinstance(r.reduction, Trivial)
    return Verdict(YES if ok else NO,
                   [TrailEntry("radical-table", "Section 1.2", _RADICAL_ANCHOR)],
                   {"radical": to_text(r.radical_subgroup),
                    "reduction": to_text(r.reduction), "stages": r.stages})


# ---------------------------------------------------------------------------
# Universal extension


@dataclass(frozen=True)
class UniversalExtension:
    base: GroupExpr
    index: GroupExpr | Unsupported
    quotient: GroupExpr | None
    total: GroupExpr | None
    precondition: Verdict = field(compare=False)
    annotations: tuple = ()

    def as_dict(self) -> dict:
        def txt(v):
            return None if v is None else (str(v) if isinstance(v, Unsupported) else to_text(v))
        return {"base": txt(self.base), "index": txt(self.index),
                "quotient": txt(self.quotient), "total": txt(self.total),
                "precondition": self.precondition.as_dict(),
                "annotations": list(self.annotations)}


def h_radical(g: GroupExpr, a: GroupExpr) -> Verdict:
    """Is ``a`` radical for the coefficient group H attached to ``g``?"""
    c = derive_coeffs(g)
    r = radical(c.H, a)
    trail = [TrailEntry("H-radical", "Definition 1.6", "A must be radical for the group H of G")]
    if isinstance(r, Unsupported):
        return Verdict(UNKNOWN, [], {"reason": r.reason, "H": to_text(c.H)}, ["H-radical"])
    if isinstance(r.reduction, Trivial):
        return Verdict(YES, trail, {"H": to_text(c.H)})
    bad = summands(r.reduction)[0]
    return Verdict(NO, trail, {"H": to_text(c.H), "summand": to_text(bad),
                               "prime": _failing_prime(c, bad)})


def _failing_prime(c, bad: GroupExpr):
    if c.torsion:
        # H is a sum of Z/p over J'; bad has no p-torsion for any of them
        return min(c.Jprime.primes) if c.Jprime.is_finite and not c.Jprime.is_empty() else None
    # H = Z[J^-1]: some p in J acts non-invertibly on the summand
    if isinstance(bad, Cyclic):
        return bad.p if bad.p in c.J else c.J.smallest()
    if isinstance(bad, RankOne):
        miss = c.J - bad.t.infinite_primes()
        return None if miss.is_empty() else miss.smallest()
    return c.J.smallest() if not c.J.is_empty() else None


def universal_extension(g: GroupExpr, a: GroupExpr, strict: bool = False) -> UniversalExtension:
    """0 -> A -> E -> (sum over Ext(G_ab, A)) G_ab -> 0, left symbolic.

    The H-radical precondition is always evaluated and recorded; with
    ``strict=True`` a failure raises :class:`PreconditionError`.
    """
    gab, a = _prepare(g, "G"), _prepare(a, "A")
    pre = h_radical(g, a)
    if strict and pre.answer is not YES:
        raise PreconditionError(f"{to_text(a)} is not radical for H = {pre.witnesses.get('H')}",
                                pre.witnesses)
    index = bifunctor("ext", gab, a)
    if isinstance(index, Unsupported):
        return UniversalExtension(a, index, None, None, pre)
    if isinstance(index, Trivial):
        return UniversalExtension(a, ZERO, ZERO, a, pre)
    quotient = normalize(IndexedSum(index, gab))
    total = FormalColimit("E", index, a)
    notes = (f"E is {to_text(gab)}-radical",) if _certified(gab, a) else ()
    return UniversalExtension(a, index, quotient, total, pre, notes)


def _certified(gab: GroupExpr, a: GroupExpr):
    if isinstance(gab, Prufer) and a == Cyclic(gab.p, 1):
        return TrailEntry("quasi-certified", "Remark 1.7",
                          "Z/p is quasi Z(p^inf)-radical but not Z(p^inf)-radical")
    if isinstance(gab, RankOne) and gab.t.tail == 1 and not gab.t.exceptions and isinstance(a, Int):
        return TrailEntry("quasi-certified", "Example 2.6",
                          "for S of type (1,1,1,...) the universal extension of Z is S-radical")
    return None


def is_quasi_radical(g: GroupExpr, a: GroupExpr) -> Verdict:
    """Rule cascade: radical implies quasi-radical; index 0 reduces to
    radicality; a small certified table; otherwise Unknown."""
    gab, a = _prepare(g, "G"), _prepare(a, "A")
    attempted = ["H-radical"]
    pre = h_radical(g, a)
    if pre.answer is not YES:
        return Verdict(UNKNOWN, [], {"precondition": pre}, attempted)
    attempted.append("radical-implies-quasi")
    rad = is_radical(gab, a)
    if rad.yes:
        return Verdict(YES, pre.trail + rad.trail + [TrailEntry(
            "radical-implies-quasi", "Remark 1.7",
            "every G_ab-radical group is quasi G-radical")], {"radical": rad})
    attempted.append("index-zero")
    index = bifunctor("ext", gab, a)
    if isinstance(index, Trivial) and rad.no:
        return Verdict(NO, pre.trail + rad.trail + [TrailEntry(
            "index-zero", "Definition 1.6",
            "Ext(G_ab, A) = 0 so the universal extension is A itself")],
            {"index": "0", "radical": rad})
    attempted.append("quasi-certified")
    cert = _certified(gab, a)
    if cert is not None:
        w = {"radical": rad}
        if not isinstance(index, Unsupported):
            w["index"] = to_text(index)
        return Verdict(YES, pre.trail + [cert], w)
    w = {"radical": rad, "index": str(index) if isinstance(index, Unsupported) else to_text(index)}
    return Verdict(UNKNOWN, [], w, attempted)
