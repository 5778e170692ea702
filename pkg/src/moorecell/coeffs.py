"""The coefficient system (J, J', H, R) attached to a group G.

J is the set of primes p for which G_ab is uniquely p-divisible and J'
its complement.  When G_ab is torsion, H is the sum of Z/p over J' and
R is Z localized at J; otherwise H = Z[J^-1] and R is the sum of the
prime fields Z/p over J.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import (INF, BaerType, Cyclic, FragmentError, GroupExpr, RankOne,
                     Sum, abelianize, classify, is_extended, normalize, to_text)
from .primes import PrimeSet
from .verdict import NO, YES, TrailEntry, Verdict


@dataclass(frozen=True)
class RingExpr:
    """``local``: Z with the primes outside J inverted; ``fields``: the
    direct sum of Z/p over p in J; ``zero``: the zero ring."""

    kind: str
    J: PrimeSet

    def __str__(self) -> str:
        if self.kind == "zero":
            return "0"
        if self.kind == "fields":
            if self.J.is_finite:
                return " + ".join(f"Z/{p}" for p in self.J)
            return f"Sum_{{p in {self.J}}} Z/p"
        inverted = self.J.complement()
        if inverted.is_empty():
            return "Z"
        if inverted.is_finite:
            return "Z[1/" + ",".join(str(p) for p in inverted) + "]"
        return f"Z_({self.J})"


@dataclass(frozen=True)
class CoeffSystem:
    group: GroupExpr
    J: PrimeSet
    Jprime: PrimeSet
    H: GroupExpr
    R: RingExpr
    torsion: bool

    def as_dict(self) -> dict:
        return {"group": to_text(self.group), "J": str(self.J), "Jprime": str(self.Jprime),
                "H": to_text(self.H), "R": str(self.R), "torsion": self.torsion}


def derive_coeffs(g: GroupExpr) -> CoeffSystem:
    """Coefficient system of ``g`` (free products are abelianized first).

    >>> c = derive_coeffs(normalize(Sum([RankOne(BaerType({3: INF})), Cyclic(3, 1)])))
    >>> str(c.J), str(c.H), str(c.R)
    ('{}', 'Z', '0')
    """
    if is_extended(g):
        raise FragmentError(f"unsupported constructor in {to_text(g)}")
    gab = abelianize(g)
    rep = classify(gab)
    J = rep.uniquely_divisible_primes
    Jp = J.complement()
    if rep.is_torsion:
        # J' is finite here: a finite sum of torsion primitives has finite support
        H = normalize(Sum([Cyclic(p, 1) for p in Jp]))
        R = RingExpr("local", J)
    else:
        H = _localization(J)
        R = RingExpr("zero" if J.is_empty() else "fields", J)
    return CoeffSystem(gab, J, Jp, H, R, rep.is_torsion)


def _localization(J: PrimeSet) -> GroupExpr:
    if J.cofinite:
        t = BaerType({p: 0 for p in J.primes}, tail=INF)
    else:
        t = BaerType({p: INF for p in J})
    return normalize(RankOne(t))


def hr_acyclic(homology, c: CoeffSystem) -> Verdict:
    """Is a space with reduced integral homology ``homology`` HR-acyclic?

    ``homology[i]`` is the group in degree ``i + 1``.
    """
    homology = [normalize(h) for h in homology]
    for h in homology:
        if is_extended(h):
            raise FragmentError(f"unsupported constructor in homology entry {to_text(h)}")
    if c.R.kind == "zero":
        return Verdict(YES, [TrailEntry("HR-zero", "Notation 1.3",
                                        "R = 0, so every space is HR-acyclic")],
                       {"R": str(c.R)})
    for deg, h in enumerate(homology, start=1):
        rep = classify(h)
        if c.R.kind == "fields":
            bad = c.J - rep.uniquely_divisible_primes
            if not bad.is_empty():
                p = bad.smallest()
                return Verdict(NO, [TrailEntry("HR-fields", "Notation 1.3",
                                               "R is a sum of Z/p over J: homology must be "
                                               "uniquely J-divisible")],
                               {"degree": deg, "prime": p, "group": to_text(h)})
        else:
            ok = rep.is_torsion and all(p in c.Jprime for p in rep.torsion_primes())
            if not ok:
                w = {"degree": deg, "group": to_text(h)}
                if rep.is_torsion:
                    w["prime"] = min(p for p in rep.torsion_primes() if p not in c.Jprime)
                return Verdict(NO, [TrailEntry("HR-local", "Notation 1.3",
                                               "R = Z_(J): homology must be J'-torsion")], w)
    rule = "HR-fields" if c.R.kind == "fields" else "HR-local"
    return Verdict(YES, [TrailEntry(rule, "Notation 1.3",
                                    "every homology group is killed by R")],
                   {"R": str(c.R)})
