"""Hom, Ext, tensor and Tor on the group fragment.

Each bifunctor is additive in both arguments over finite direct sums,
so it is evaluated summand by summand against the primitive rule table
shipped in ``data/bifunctor_rules.txt``.  Results may use the extended
output forms (p-adic integers, formal products and quotients).  Pairs the
table cannot decide come back as an :class:`Unsupported` value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .groups import (INF, BaerType, Cyclic, FormalProduct, FormalQuotient,
                     FragmentError, FreeProduct, GroupExpr, Int, Padic,
                     PadicField, Prufer, RankOne, Sum, Trivial, ZERO,
                     is_extended, normalize, summands, to_text)
from .primes import PrimeSet

KINDS = ("hom", "ext", "tensor", "tor")
SYMMETRIC = ("tensor", "tor")


@dataclass(frozen=True)
class Unsupported:
    """The rule table cannot decide this value."""

    reason: str

    def __str__(self) -> str:
        return f"Unsupported({self.reason})"


@dataclass(frozen=True)
class BifunctorRule:
    kind: str
    lhs: str
    rhs: str
    guard: tuple
    result: str
    status: str
    note: str
    line: int

    @property
    def provenance(self) -> str:
        return f"{self.kind}:{self.line} ({self.status}) {self.note}"

    def as_dict(self) -> dict:
        return {"kind": self.kind, "lhs": self.lhs, "rhs": self.rhs,
                "guard": ", ".join(self.guard), "result": self.result,
                "status": self.status, "note": self.note, "line": self.line}


_PATTERNS = {"0", "X", "Z", "Z/p^a", "Z/q^b", "Z(p^inf)", "Z(q^inf)", "R(s)", "R(t)"}
_GUARD = re.compile(r"^(p=q|p!=q|[st]\([pq]\)(=inf|<inf)|s free|s !free)$")


def parse_rules(text: str) -> tuple:
    rules = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != 7:
            raise ValueError(f"rule table line {lineno}: expected 7 fields, got {len(fields)}")
        kind, lhs, rhs, guard, result, status, note = fields
        if kind not in KINDS:
            raise ValueError(f"rule table line {lineno}: unknown kind {kind!r}")
        for pat in (lhs, rhs):
            if pat not in _PATTERNS:
                raise ValueError(f"rule table line {lineno}: unknown pattern {pat!r}")
        guards = tuple(g.strip() for g in guard.split(",") if g.strip())
        for g in guards:
            if not _GUARD.match(g):
                raise ValueError(f"rule table line {lineno}: unknown guard {g!r}")
        if status not in ("verified", "derived"):
            raise ValueError(f"rule table line {lineno}: unknown status {status!r}")
        rules.append(BifunctorRule(kind, lhs, rhs, guards, result, status, note, lineno))
    return tuple(rules)


@lru_cache(maxsize=None)
def rule_table() -> tuple:
    text = resources.files("moorecell").joinpath("data/bifunctor_rules.txt").read_text()
    return parse_rules(text)


# ---------------------------------------------------------------------------
# Matching


def _match(pattern: str, g: GroupExpr, env: dict, first: bool) -> bool:
    if pattern == "X":
        env["X"] = g
        return True
    if pattern == "0":
        return isinstance(g, Trivial)
    if pattern == "Z":
        return isinstance(g, Int)
    if pattern.startswith("Z/"):
        if not isinstance(g, Cyclic):
            return False
        env["p" if first else "q"] = g.p
        env["a" if first else "b"] = g.k
        return True
    if pattern.startswith("Z("):
        if not isinstance(g, Prufer):
            return False
        env["p" if first else "q"] = g.p
        return True
    if pattern.startswith("R("):
        if not isinstance(g, RankOne) or g.t.is_zero():
            return False
        env[pattern[2]] = g.t
        return True
    raise ValueError(pattern)


def _guard_holds(guard: str, env: dict) -> bool:
    if guard == "p=q":
        return env["p"] == env["q"]
    if guard == "p!=q":
        return env["p"] != env["q"]
    if guard == "s free":
        return env["s"].is_free()
    if guard == "s !free":
        return not env["s"].is_free()
    t, p, cond = guard[0], guard[2], guard[4:]
    v = env[t].value_at(env[p])
    return (v == INF) if cond == "=inf" else (v != INF)


def _evaluate(result: str, env: dict):
    if result.startswith("@"):
        return _COMPUTED[result[1:]](env)
    if result == "0":
        return ZERO
    if result == "Z":
        return Int()
    if result == "X":
        return env["X"]
    if result == "R(s+t)":
        return normalize(RankOne(env["s"] + env["t"]))
    if result.startswith("R("):
        return normalize(RankOne(env[result[2]]))
    m = re.match(r"^Z/([pq])\^(a|b|min\(a,b\))$", result)
    if m:
        k = min(env["a"], env["b"]) if m.group(2) == "min(a,b)" else env[m.group(2)]
        return Cyclic(env[m.group(1)], k)
    m = re.match(r"^(Z\(|Zhat\(|Qhat\()([pq])(\^inf)?\)$", result)
    if m:
        p = env[m.group(2)]
        return {"Z(": Prufer, "Zhat(": Padic, "Qhat(": PadicField}[m.group(1)](p)
    raise ValueError(f"cannot evaluate rule result {result!r}")


def primitive_rule(kind: str, a: GroupExpr, b: GroupExpr):
    """The rule that applies to the primitive pair (a, b), with its bindings.

    Returns ``(rule, env, swapped)`` or ``None``.
    """
    orders = [(a, b, False)]
    if kind in SYMMETRIC:
        orders.append((b, a, True))
    for rule in rule_table():
        if rule.kind != kind:
            continue
        for x, y, swapped in orders:
            env = {}
            if _match(rule.lhs, x, env, True) and _match(rule.rhs, y, env, False) \
                    and all(_guard_holds(g, env) for g in rule.guard):
                return rule, env, swapped
    return None


@lru_cache(maxsize=65536)
def _primitive(kind: str, a: GroupExpr, b: GroupExpr):
    found = primitive_rule(kind, a, b)
    if found is None:
        return Unsupported(f"no {kind} rule for ({to_text(a)}, {to_text(b)})"), None
    rule, env, _ = found
    value = _evaluate(rule.result, env)
    return value, rule


# ---------------------------------------------------------------------------
# Computed entries


def _hom_rank_one(env):
    """Hom(R(s), R(t)) = {q in Q : q R(s) in R(t)}, a rank-one group or 0."""
    s, t = env["s"], env["t"]

    def diff(vs, vt):
        if vs == INF:
            return INF if vt == INF else None
        if vt == INF:
            return INF
        return vt - vs

    tail = diff(s.tail, t.tail)
    if tail is None or tail < 0:
        return ZERO
    values = {}
    for p in s.exception_primes | t.exception_primes:
        d = diff(s.value_at(p), t.value_at(p))
        if d is None:
            return ZERO
        # finitely many negative entries: rescale so the group contains 1
        values[p] = max(d, 0)
    return normalize(RankOne(BaerType(values, tail)))


def _ext_rank_one_int(env):
    s = env["s"]
    if s.is_free():
        return ZERO
    parts = []
    for p, v in s.exceptions:
        if v == INF:
            parts.append(Padic(p))
        elif v > 0:
            parts.append(Cyclic(p, v))
    if s.tail != 0:
        factor = "Zhat(p)" if s.tail == INF else ("Z/p" if s.tail == 1 else f"Z/p^{s.tail}")
        parts.append(FormalProduct(factor, PrimeSet.cofinite_excluding(s.exception_primes)))
    return normalize(FormalQuotient(Sum(parts), Int()))


def _ext_rank_one_rank_one(env):
    s, t = env["s"], env["t"]
    if s.is_free():
        return ZERO
    if t.infinite_primes().is_all():
        return ZERO
    # s is a localization Z[J^-1] up to finitely many finite entries
    localization_like = s.tail in (0, INF) and s.primes_with(lambda v: v not in (0, INF)).is_finite
    if localization_like and s.infinite_primes().issubset(t.infinite_primes()):
        return ZERO
    return Unsupported(f"Ext({to_text(RankOne(s))}, {to_text(RankOne(t))}) between rank-one "
                       "groups is outside the decidable cases")


_COMPUTED = {
    "hom_rank_one": _hom_rank_one,
    "ext_rank_one_int": _ext_rank_one_int,
    "ext_rank_one_rank_one": _ext_rank_one_rank_one,
}


# ---------------------------------------------------------------------------
# Public API


def _check(g: GroupExpr) -> GroupExpr:
    if isinstance(g, FreeProduct):
        raise FragmentError("bifunctors take abelian groups; abelianize first")
    if is_extended(g):
        raise FragmentError(f"extended constructor in input {to_text(g)}")
    g = normalize(g)
    if isinstance(g, FreeProduct):
        raise FragmentError("bifunctors take abelian groups; abelianize first")
    return g


def bifunctor_with_trail(kind: str, a: GroupExpr, b: GroupExpr):
    """Like :func:`bifunctor` but also return the rules used."""
    if kind not in KINDS:
        raise ValueError(f"unknown bifunctor {kind!r}")
    a, b = _check(a), _check(b)
    parts, used = [], []
    for x in summands(a):
        for y in summands(b):
            value, rule = _primitive(kind, x, y)
            if isinstance(value, Unsupported):
                return value, used
            if rule is not None and rule not in used:
                used.append(rule)
            parts.append(value)
    return normalize(Sum(parts)), used


def bifunctor(kind: str, a: GroupExpr, b: GroupExpr):
    """``kind(a, b)`` for kind in hom, ext, tensor, tor.

    >>> from moorecell.parsing import parse
    >>> print(bifunctor("ext", parse("type(1)"), parse("Z")))
    (Prod_{p in P} Z/p)/Z
    >>> print(bifunctor("tensor", parse("Z/3"), parse("Z[1/3]")))
    0
    """
    return bifunctor_with_trail(kind, a, b)[0]


def hom(a, b):
    return bifunctor("hom", a, b)


def ext(a, b):
    return bifunctor("ext", a, b)


def tensor(a, b):
    return bifunctor("tensor", a, b)


def tor(a, b):
    return bifunctor("tor", a, b)


def is_zero(value) -> bool | None:
    """True/False for a group, None for an Unsupported value."""
    if isinstance(value, Unsupported):
        return None
    return isinstance(normalize(value), Trivial)
