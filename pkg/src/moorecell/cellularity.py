"""Deciding M-cellularity and computing CW_M on covered inputs.

``is_cellular`` runs a fixed-priority cascade of rules.  Rules that are
full characterizations may answer Yes or No; partial rules only answer
Yes.  In ``full`` mode every applicable rule is evaluated and any Yes/No
disagreement raises :class:`CascadeConflict`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeffs import CoeffSystem, derive_coeffs, hr_acyclic
from .groups import (Cyclic, FormalProduct, FormalQuotient, FragmentError,
                     FreeProduct, GroupExpr, Int, Padic, PadicField, Prufer, Sum,
                     Trivial, ZERO, abelianize, is_extended, is_subring_of_q,
                     localization, normalize, rank_one_type, summands, to_text)
from .homalg import Unsupported, bifunctor
from .moore import MooreModel, NoRecipe, exists_moore, moore_model
from .primes import PrimeSet
from .radical import PreconditionError, is_quasi_radical, is_radical, radical
from .spaces import (EM, Completion, FormalFiber, MooreSpace, Point,
                     SpaceDesc, Sphere, TwoStage, acyclicity_profile,
                     h2, has_extended, is_nilpotent,
                     is_simply_connected, pi1, pi2, product, space_text)
from .verdict import NO, UNKNOWN, YES, Answer, TrailEntry, Verdict


class CascadeConflict(AssertionError):
    pass


# ---------------------------------------------------------------------------
# Context shared by the rules


@dataclass
class _Ctx:
    model: MooreModel
    x: SpaceDesc
    G: GroupExpr
    Gab: GroupExpr
    coeffs: CoeffSystem
    _hr: Verdict | None = None
    _pi1: Verdict | None = None

    @property
    def hr(self) -> Verdict:
        if self._hr is None:
            prof = acyclicity_profile(self.x)
            if prof is None:
                self._hr = Verdict(UNKNOWN, [], {}, ["HR"])
            else:
                self._hr = hr_acyclic(prof, self.coeffs)
        return self._hr

    @property
    def pi1_cellular(self) -> Verdict:
        if self._pi1 is None:
            self._pi1 = g_cellular(self.G, pi1(self.x))
        return self._pi1

    @property
    def simply_connected(self) -> bool:
        return bool(is_simply_connected(self.x))


def g_cellular(G: GroupExpr, N: GroupExpr | None) -> Verdict:
    """Conservative test of whether N lies in the colimit closure of G."""
    if N is None:
        return Verdict(UNKNOWN, [], {}, ["pi1-cellular"])
    G, N = normalize(G), normalize(N)
    if isinstance(N, Trivial):
        return Verdict(YES, [TrailEntry("pi1-trivial", "Introduction",
                                        "the trivial group is the empty colimit")], {})
    copies = N.factors if isinstance(N, FreeProduct) else (N,)
    if all(c == G for c in copies) or N == G:
        return Verdict(YES, [TrailEntry("pi1-copies-of-G", "Introduction",
                                        "a free product of copies of G is a colimit of G")], {})
    if not isinstance(N, FreeProduct) and not is_extended(N):
        # a cellular group is generated by images of G; for abelian N that is radicality
        r = is_radical(abelianize(G), N)
        if r.no:
            return Verdict(NO, r.trail + [TrailEntry(
                "pi1-not-radical", "Section 1.2",
                "a G-cellular group equals its G-radical")], {"radical": r})
    return Verdict(UNKNOWN, [], {}, ["pi1-trivial", "pi1-copies-of-G", "pi1-not-radical"])


# ---------------------------------------------------------------------------
# Rules: each returns a Verdict or None (not applicable)


def _known(v: Verdict) -> bool:
    return v.answer.known


def _iff(rule: str, cite: str, anchor: str, parts: dict) -> Verdict:
    """Conjunction of named sub-verdicts under a full characterization."""
    ans = Answer.all(v.answer for v in parts.values())
    trail = [TrailEntry(rule, cite, anchor)]
    w = {k: v for k, v in parts.items()}
    if ans is NO:
        failing = next(k for k, v in parts.items() if v.no)
        w["failing"] = failing
        trail = parts[failing].trail + trail
    elif ans is YES:
        trail = [e for v in parts.values() for e in v.trail] + trail
    else:
        return Verdict(UNKNOWN, [], w, [rule])
    return Verdict(ans, trail, w)


def rule_point(c: _Ctx):
    if isinstance(c.x, Point):
        return Verdict(YES, [TrailEntry("R0-point", "Introduction",
                                        "the point is the empty homotopy colimit")], {})
    return None


def rule_certified_output(c: _Ctx):
    """Cellularizations are cellular: recognize outputs of the cw rules."""
    if not has_extended(c.x):
        return None
    for src, out, cite in _certified_outputs(c):
        if out == c.x:
            return Verdict(YES, [TrailEntry("R-CW", cite,
                                            "CW_M X is M-cellular by construction")],
                           {"cellularization_of": space_text(src)})
    if isinstance(c.x, FormalFiber) and c.x == _fiber_output(c, c.x.source):
        return Verdict(YES, [TrailEntry("R-CW", "Proposition 2.9",
                                        "CW_M X is M-cellular by construction")],
                       {"cellularization_of": space_text(c.x.source)})
    return None


def rule_subring(c: _Ctx):
    if not is_subring_of_q(c.G):
        return None
    return _iff("R1-subring", "Theorem 2.8",
                "for G = Z[J^-1]: cellular iff pi1 is G-cellular and X is HR-acyclic",
                {"pi1_cellular": c.pi1_cellular, "hr_acyclic": c.hr})


def _reduced_torsion_bounds(G: GroupExpr):
    terms = summands(G)
    if isinstance(G, FreeProduct) or not terms or not all(isinstance(t, Cyclic) for t in terms):
        return None
    return {t.p: t.k for t in terms}


def generated_by_bounded(N: GroupExpr, bounds: dict) -> Verdict:
    """Is N generated by elements of order p^l with l <= bounds[p]?"""
    N = normalize(N)
    anchor = "pi1 generated by elements of order p^l with l <= k_p"
    factors = N.factors if isinstance(N, FreeProduct) else (N,)
    for f in factors:
        for s in summands(f):
            ok = isinstance(s, Cyclic) and s.k <= bounds.get(s.p, 0)
            if not ok:
                why = ("a summand of infinite order or unbounded exponent"
                       if not isinstance(s, Cyclic) else
                       f"Z/{s.order} is not generated by elements of order dividing "
                       f"{s.p}^{bounds.get(s.p, 0)}")
                return Verdict(NO, [TrailEntry("generation", "Theorem 2.10", anchor)],
                               {"summand": to_text(s), "reason": why})
    return Verdict(YES, [TrailEntry("generation", "Theorem 2.10", anchor)], {})


def rule_reduced_torsion(c: _Ctx):
    bounds = _reduced_torsion_bounds(c.G)
    if bounds is None:
        return None
    N = pi1(c.x)
    gen = (Verdict(UNKNOWN, [], {}, ["generation"]) if N is None or is_extended(N)
           else generated_by_bounded(N, bounds))
    return _iff("R2-reduced-torsion", "Theorem 2.10",
                "for G a finite sum of Z/p^k: cellular iff pi1 is generated by elements "
                "of order p^l, l <= k_p, and X is HZ_(J)-acyclic",
                {"pi1_generated": gen, "hr_acyclic": c.hr})


def rule_rank_one_sc(c: _Ctx):
    if not c.simply_connected or rank_one_type(c.G) is None:
        return None
    return _iff("R3-rank-one-sc", "Theorem 2.5",
                "for G < Q and X 1-connected: cellular iff X is HR-acyclic",
                {"hr_acyclic": c.hr})


def rule_torsion_sc(c: _Ctx):
    if not c.simply_connected or isinstance(c.G, FreeProduct) or not c.coeffs.torsion:
        return None
    if isinstance(c.G, Prufer):
        cite, anchor = "Theorem 2.12", "for G = Z(p^inf) and X 1-connected: cellular iff X is HZ[1/p]-acyclic"
    else:
        cite, anchor = "Theorem 2.14", "for torsion abelian G and X 1-connected: cellular iff X is HZ_(J)-acyclic"
    return _iff("R4-torsion-sc", cite, anchor, {"hr_acyclic": c.hr})


def _is_counterexample_group(G: GroupExpr):
    if not isinstance(G, FreeProduct) or len(G.factors) != 2:
        return None
    a, b = G.factors
    for x, y in ((a, b), (b, a)):
        if isinstance(y, Cyclic) and y.k == 1 and x == localization(y.p):
            return y.p
    return None


def rule_counterexample(c: _Ctx):
    p = _is_counterexample_group(c.G)
    if p is None or c.x != EM(Int(), 2):
        return None
    return Verdict(NO, [TrailEntry("R-T3.2", "Theorem 3.2",
                                   "for G = Z[1/p] * Z/p, K(Z,2) is HR-acyclic with G-cellular "
                                   "pi1 but not M-cellular")],
                   {"R": str(c.coeffs.R), "hr_acyclic": c.hr, "pi1_cellular": c.pi1_cellular,
                    "prime": p})


def rule_em2(c: _Ctx):
    if not (isinstance(c.x, EM) and c.x.n == 2) or not c.hr.yes:
        return None
    q = is_quasi_radical(c.G, c.x.a)
    if not q.answer.known:
        return Verdict(UNKNOWN, [], {"quasi_radical": q}, ["R5-em2"])
    return Verdict(q.answer, c.hr.trail + q.trail + [TrailEntry(
        "R5-em2", "Proposition propK(A,2)",
        "an HR-acyclic K(A,2) is cellular iff A is quasi G-radical")],
        {"quasi_radical": q, "hr_acyclic": c.hr})


def _standing(c: _Ctx) -> bool:
    return c.pi1_cellular.yes and c.hr.yes


def rule_h2_radical(c: _Ctx):
    h = h2(c.x)
    if h is None or is_extended(h):
        return None
    r = is_radical(c.Gab, h)
    if not r.yes:
        return None
    if _standing(c):
        return Verdict(YES, r.trail + c.pi1_cellular.trail + c.hr.trail + [TrailEntry(
            "R6-h2-radical", "Theorem 1.8",
            "with H_2X G_ab-radical, pi1 G-cellular and HR-acyclicity suffice")],
            {"h2_radical": r})
    return Verdict(UNKNOWN, [], {"h2_radical": r}, ["R6-h2-radical"])


def rule_pi2(c: _Ctx):
    p2 = pi2(c.x)
    if p2 is None or is_extended(p2):
        return None
    r = is_radical(c.Gab, p2)
    if r.yes:
        cite, rule, anchor, w = ("Corollary 1.10", "R7-pi2-radical",
                                 "pi2 G_ab-radical, pi1 G-cellular and HR-acyclic imply cellular",
                                 r)
    else:
        q = is_quasi_radical(c.G, p2)
        if not q.yes:
            return None
        cite, rule, anchor, w = ("Proposition 1.11", "R7-pi2-quasi",
                                 "pi2 quasi G-radical: cellular iff pi1 G-cellular and HR-acyclic",
                                 q)
    if _standing(c):
        return Verdict(YES, w.trail + c.pi1_cellular.trail + c.hr.trail
                       + [TrailEntry(rule, cite, anchor)], {"pi2": w})
    return Verdict(UNKNOWN, [], {"pi2": w}, [rule])


def rule_general(c: _Ctx):
    anchor = "cellular iff pi1 G-cellular, X HR-acyclic and E G_ab-radical"
    for name in ("hr", "pi1_cellular"):
        v = getattr(c, name)
        if v.no:
            return Verdict(NO, v.trail + [TrailEntry("R8-general", "Theorem 1.5", anchor)],
                           {"failing": "hr_acyclic" if name == "hr" else "pi1_cellular",
                            name if name != "hr" else "hr_acyclic": v})
    if c.simply_connected and c.hr.yes:
        h = h2(c.x)
        if h is not None and not is_extended(h):
            idx = bifunctor("ext", c.Gab, h)
            if isinstance(idx, Trivial):
                r = is_radical(c.Gab, h)
                if r.answer.known:
                    return Verdict(r.answer, c.hr.trail + r.trail + [TrailEntry(
                        "R8-general", "Theorem 1.5",
                        "for 1-connected X with Ext(G_ab, H_2X) = 0, E = H_2X")],
                        {"E": to_text(h), "radical": r})
    return Verdict(UNKNOWN, [], {"hr_acyclic": c.hr, "pi1_cellular": c.pi1_cellular},
                   ["R8-general"])


FULL_RULES = (rule_point, rule_certified_output, rule_subring, rule_reduced_torsion,
              rule_rank_one_sc, rule_torsion_sc, rule_counterexample, rule_em2)
PARTIAL_RULES = (rule_h2_radical, rule_pi2)
RULES = FULL_RULES + PARTIAL_RULES + (rule_general,)


def _as_model(m) -> MooreModel:
    if isinstance(m, MooreModel):
        return m
    if isinstance(m, NoRecipe):
        raise PreconditionError(f"no constructible model: {m.reason}")
    if isinstance(m, GroupExpr):
        return _as_model(moore_model(m))
    raise TypeError(f"expected a MooreModel, got {m!r}")


def _context(m, x: SpaceDesc) -> _Ctx:
    model = _as_model(m)
    if not isinstance(x, SpaceDesc):
        raise TypeError(f"expected a space descriptor, got {x!r}")
    G = model.group
    return _Ctx(model, x, G, abelianize(G), derive_coeffs(G))


def is_cellular(m, x: SpaceDesc, full: bool = False) -> Verdict:
    """Is ``x`` M-cellular for the Moore space model ``m``?

    >>> from moorecell.parsing import parse, parse_space
    >>> is_cellular(moore_model(parse("type(1)")), parse_space("S^2")).answer
    <Answer.YES: 'Yes'>
    """
    c = _context(m, x)
    certified = rule_certified_output(c)
    if certified is not None:
        # the remaining rules cannot read extended group data
        return certified
    if has_extended(x):
        raise FragmentError(f"non-fragment group data in {space_text(x)}")
    results = []
    attempted = []
    for rule in RULES:
        v = rule(c)
        if v is None:
            continue
        attempted.append(rule.__name__)
        results.append((rule.__name__, v))
        if not full and v.answer.known:
            return v
    if full:
        answers = {v.answer for _, v in results if v.answer.known}
        if YES in answers and NO in answers:
            raise CascadeConflict(
                f"rules disagree on {space_text(x)}: "
                + ", ".join(f"{n}={v.answer}" for n, v in results))
        decided = next((v for _, v in results if v.answer.known), None)
        if decided is not None:
            out = Verdict(decided.answer, decided.trail, dict(decided.witnesses),
                          decided.attempted)
            out.witnesses["rules"] = {n: v.answer.value for n, v in results}
            return out
    return Verdict(UNKNOWN, [], {"rules": {n: v.answer.value for n, v in results}},
                   attempted or [r.__name__ for r in RULES])


# ---------------------------------------------------------------------------
# Cellularization


@dataclass
class CWResult:
    space: SpaceDesc | None
    trail: list = field(default_factory=list)
    attempted: list = field(default_factory=list)

    @property
    def known(self) -> bool:
        return self.space is not None

    def as_dict(self) -> dict:
        return {"space": space_text(self.space) if self.space is not None else None,
                "status": "ok" if self.known else "Unknown",
                "trail": [e.as_dict() for e in self.trail],
                "attempted": list(self.attempted)}


def _J_of(c: _Ctx) -> PrimeSet | None:
    """J when G is a subring Z[J^-1] of Q, else None."""
    if not is_subring_of_q(c.G):
        return None
    return c.coeffs.J


def _completion_quotient(J: PrimeSet) -> GroupExpr:
    return normalize(FormalQuotient(FormalProduct("Zhat(p)", J), Int()))


def _fiber_output(c: _Ctx, x: SpaceDesc) -> SpaceDesc | None:
    J = _J_of(c)
    if J is None:
        return None
    return FormalFiber(x, Completion(x, J))


def _certified_outputs(c: _Ctx):
    """(input, cw output, citation) for the evaluated golden cases."""
    out = []
    J = _J_of(c)
    if J is not None and not J.is_empty():
        if J.is_finite:
            for p in J:
                out.append((EM(Prufer(p), 1), EM(PadicField(p), 1), "Example 2.8"))
        out.append((EM(Int(), 2), EM(_completion_quotient(J), 1), "Proposition 2.9"))
        if J.is_all():
            q = _completion_quotient(J)
            out.append((Sphere(2), TwoStage(q, q), "Example 2.7"))
    p = _is_counterexample_group(c.G)
    if p is not None:
        out.append((EM(Int(), 2), EM(normalize(Sum([FormalQuotient(Padic(p), Int()),
                                                     Cyclic(p, 1)])), 1), "Theorem 3.2"))
    return out


def cw(m, x: SpaceDesc) -> CWResult:
    """CW_M x for the covered cases; ``space`` is None when unknown."""
    c = _context(m, x)
    attempted = ["cellular"]
    v = is_cellular(c.model, x)
    if v.yes:
        return CWResult(x, v.trail + [TrailEntry("C0-cellular", "Introduction",
                                                 "a cellular space is its own cellularization")])
    # C3: the counterexample of Theorem 3.2
    attempted.append("C3-counterexample")
    for src, out, cite in _certified_outputs(c):
        if src == x and cite == "Theorem 3.2":
            return CWResult(out, [TrailEntry("C3-counterexample", cite,
                                             "CW_M K(Z,2) is K(Zhat_p/Z x Z/p, 1)")])
    # C2: subrings of Q and nilpotent spaces with G-radical pi1
    attempted.append("C2-subring")
    J = _J_of(c)
    p1 = pi1(x)
    if J is not None and is_nilpotent(x) and p1 is not None and not is_extended(p1) \
            and not isinstance(p1, FreeProduct) and is_radical(c.G, p1).yes:
        trail = [TrailEntry("C2-subring", "Proposition 2.9",
                            "CW_M X is the fiber of X -> prod over J of the p-completions")]
        for src, out, cite in _certified_outputs(c):
            if src == x:
                return CWResult(out, trail + [TrailEntry("C2-golden", cite,
                                                         "evaluated fiber")])
        return CWResult(_fiber_output(c, x), trail)
    # C1: K(A,2) with HR-acyclicity and a computable reduction
    attempted.append("C1-em2")
    if isinstance(x, EM) and x.n == 2:
        if c.hr.no:
            raise PreconditionError(
                f"{space_text(x)} is not HR-acyclic; reduce it first", c.hr.witnesses)
        idx = bifunctor("ext", c.Gab, x.a)
        if c.hr.yes and isinstance(idx, Trivial):
            r = radical(c.Gab, x.a)
            if not isinstance(r, Unsupported):
                # E = A, so phi is the projection A -> A/T_G A
                space = product(EM(r.radical_subgroup, 2), EM(ZERO, 1))
                return CWResult(space, [TrailEntry(
                    "C1-em2", "Theorem 3.1",
                    "CW_M K(A,2) is K(Ker phi,2) x K(Coker phi,1) for phi: A -> E/T_G E")])
    return CWResult(None, [], attempted)


# ---------------------------------------------------------------------------
# Moore spaces on Moore spaces


def moore_on_moore(m, a: GroupExpr) -> Verdict:
    """Is M(a, 1) cellular for the model ``m``?"""
    model = _as_model(m)
    a = normalize(a)
    ex = exists_moore(a)
    if ex.no:
        raise PreconditionError(f"no Moore space M({to_text(a)},1)", ex.witnesses)
    G = model.group
    t = rank_one_type(G)
    terms = summands(a)
    if t is not None and terms and all(isinstance(s, Cyclic) for s in terms) \
            and len({s.p for s in terms}) == len(terms):
        J = t.infinite_primes()
        if all(s.p not in J for s in terms):
            return Verdict(YES, [TrailEntry("lemma-cyclic", "Lemma 2.3",
                                            "M(Z/n,1) is M-cellular when no prime of n lies in J")],
                           {"J": str(J)})
    if not isinstance(G, FreeProduct) and _is_summand(a, G):
        return Verdict(YES, [TrailEntry("lemma-summand", "Lemma 2.13",
                                        "M(A,1) is M(A+B,1)-cellular")], {})
    v = is_cellular(model, MooreSpace(a, 1))
    if v.answer.known:
        return v
    return Verdict(UNKNOWN, [], v.witnesses, ["lemma-cyclic", "lemma-summand"] + v.attempted)


def _is_summand(a: GroupExpr, G: GroupExpr) -> bool:
    rest = list(summands(G))
    for s in summands(a):
        if s not in rest:
            return False
        rest.remove(s)
    return True
