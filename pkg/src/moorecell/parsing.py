"""Recursive-descent parser for group expressions and space descriptors.

Group grammar (whitespace-insensitive)::

    group   := product
    product := sum ("*" sum)*
    sum     := postfix ("+" postfix)*
    postfix := primary ("{" var "=" NAT ("," var "=" NAT)* "}")? ("/" primary)?
    primary := "0" | "Z" | "Z/" NAT | "Z(" PRIME "^inf)"
             | "Z[1/" PRIME ("," PRIME)* "]" | "Q"
             | "type(" tail (";" PRIME ":" exp)* ")" | "(" group ")"

``+`` binds tighter than ``*``.  Wherever a prime is expected a single
lower-case letter may stand in, provided an enclosing ``{p=3}`` binding
gives it a value.  With ``allow_extended=True`` the output-only forms
``Zhat(p)``, ``Qhat(p)``, ``Prod_{p in P} Z/p``, ``Sum_{p in P} ...``,
``Sum_{I} G``, ``colim[tag; I; G]`` and quotients ``A/B`` are accepted.

Space grammar::

    space := "K(" group "," NAT ")" | "S^" NAT | "M(" group "," NAT ")" | "pt"
           | "space{" field (";" field)* "}"
    field := "pi1=" group | "H=[" group ("," group)* "]" | "sc=" bool
           | "nilp=" bool | "pi2=" group
"""

from __future__ import annotations

import re

from .groups import (INF, BaerType, Cyclic, FormalColimit, FormalProduct,
                     FormalQuotient, FormalSum, FreeProduct, GroupExpr,
                     IndexedSum, Int, Padic, PadicField, Prufer, RankOne, Sum,
                     Trivial, cyclic, normalize)
from .primes import PrimeSet, is_prime
from .spaces import EM, Generic, MooreSpace, Point, SpaceDesc, Sphere


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.message = message
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


_NAT = re.compile(r"[0-9]+")
_VAR = re.compile(r"[a-z](?![a-zA-Z_])")
_TEMPLATE = re.compile(r"Z/p\^[0-9]+|Z/p|Z\(p\^inf\)|Zhat\(p\)|Qhat\(p\)")


class _Parser:
    def __init__(self, text: str, allow_extended: bool):
        self.text = text
        self.pos = 0
        self.allow_extended = allow_extended

    # -- low level ---------------------------------------------------------

    def error(self, msg, pos=None):
        return ParseError(msg, self.pos if pos is None else pos, self.text)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def accept(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.accept(s):
            found = self.text[self.pos:self.pos + 8] or "end of input"
            raise self.error(f"expected {s!r}, found {found!r}")

    def at_end(self) -> bool:
        self.ws()
        return self.pos >= len(self.text)

    def nat(self) -> int:
        self.ws()
        m = _NAT.match(self.text, self.pos)
        if not m:
            raise self.error("expected a natural number")
        self.pos = m.end()
        return int(m.group())

    def exp(self):
        if self.accept("inf"):
            return INF
        return self.nat()

    def prime_ref(self):
        """A literal prime or a variable; returns env -> int."""
        self.ws()
        start = self.pos
        m = _VAR.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            name = m.group()

            def resolve(env, name=name, start=start):
                if name not in env:
                    raise ParseError(f"unbound prime variable {name!r}", start, self.text)
                return env[name]
            return resolve
        n = self.nat()
        if not is_prime(n):
            raise self.error(f"{n} is not a prime", start)
        return lambda env, n=n: n

    # -- groups ------------------------------------------------------------

    def group(self):
        first = self.sum_()
        parts = [first]
        while self.accept("*"):
            parts.append(self.sum_())
        if len(parts) == 1:
            return first

        def build(env):
            return FreeProduct([p(env) for p in parts])
        return build

    def sum_(self):
        self.ws()
        starts = [self.pos]
        parts = [self.postfix()]
        while True:
            self.ws()
            if not self.accept("+"):
                break
            self.ws()
            starts.append(self.pos)
            parts.append(self.postfix())
        if len(parts) == 1:
            return parts[0]

        def build(env):
            terms = []
            for s, p in zip(starts, parts):
                g = p(env)
                if isinstance(g, FreeProduct):
                    raise ParseError("a free product may only appear at the outermost level",
                                     s, self.text)
                terms.append(g)
            return Sum(terms)
        return build

    def postfix(self):
        self.ws()
        node = self.primary()
        if self.peek("{"):
            node = self.binding(node)
        if self.peek("/"):
            if not self.allow_extended:
                raise self.error("formal quotients are output-only forms")
            self.expect("/")
            den = self.primary()

            def quot(env, num=node, den=den):
                return FormalQuotient(num(env), den(env))
            node = quot
        return node

    def binding(self, node):
        self.expect("{")
        env_add = {}
        while True:
            self.ws()
            m = _VAR.match(self.text, self.pos)
            if not m:
                raise self.error("expected a variable name")
            self.pos = m.end()
            self.expect("=")
            start = self.pos
            n = self.nat()
            if not is_prime(n):
                raise self.error(f"{n} is not a prime", start)
            env_add[m.group()] = n
            if not self.accept(","):
                break
        self.expect("}")
        return lambda env: node({**env, **env_add})

    def primary(self):
        self.ws()
        start = self.pos
        if self.accept("("):
            inner = self.group()
            self.expect(")")
            return inner
        if self.peek("Zhat(") or self.peek("Qhat("):
            return self.padic()
        if self.peek("Prod_{") or self.peek("Sum_{") or self.peek("colim["):
            return self.formal()
        if self.accept("type("):
            return self.type_()
        if self.accept("Z/"):
            return self.cyclic(start)
        if self.accept("Z("):
            p = self.prime_ref()
            self.expect("^")
            self.expect("inf")
            self.expect(")")
            return lambda env: Prufer(p(env))
        if self.accept("Z[1/"):
            ps = [self.prime_ref()]
            while self.accept(","):
                ps.append(self.prime_ref())
            self.expect("]")
            return lambda env: RankOne(BaerType({p(env): INF for p in ps}))
        if self.accept("Z"):
            return lambda env: Int()
        if self.accept("Q"):
            return lambda env: RankOne(BaerType(tail=INF))
        if self.peek("0") and not _NAT.match(self.text, self.pos + 1):
            self.pos += 1
            return lambda env: Trivial()
        found = self.text[self.pos:self.pos + 8] or "end of input"
        raise self.error(f"expected a group, found {found!r}")

    def cyclic(self, start):
        self.ws()
        m = _VAR.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            name = m.group()
            k = self.nat() if self.accept("^") else 1
            if k < 1:
                raise self.error("exponent must be >= 1")

            def build(env):
                if name not in env:
                    raise ParseError(f"unbound prime variable {name!r}", start, self.text)
                return Cyclic(env[name], k)
            return build
        npos = self.pos
        n = self.nat()
        if n < 1:
            raise self.error("Z/n needs n >= 1", npos)
        if self.accept("^"):
            if not is_prime(n):
                raise self.error(f"{n} is not a prime", npos)
            k = self.nat()
            if k < 1:
                raise self.error("exponent must be >= 1")
            return lambda env: Cyclic(n, k)
        return lambda env: cyclic(n)

    def type_(self):
        tail = self.exp()
        entries = []
        while self.accept(";"):
            p = self.prime_ref()
            self.expect(":")
            entries.append((p, self.exp()))
        self.expect(")")

        def build(env):
            exc = {}
            for p, v in entries:
                exc[p(env)] = v
            return RankOne(BaerType(exc, tail))
        return build

    def padic(self):
        if not self.allow_extended:
            raise self.error("p-adic groups are output-only forms")
        if self.accept("Zhat("):
            cls = Padic
        else:
            self.expect("Qhat(")
            cls = PadicField
        p = self.prime_ref()
        self.expect(")")
        return lambda env: cls(p(env))

    def prime_set(self) -> PrimeSet:
        if self.accept("P"):
            if self.accept("\\{"):
                ps = self.prime_list("}")
                return PrimeSet.cofinite_excluding(ps)
            return PrimeSet.all()
        self.expect("{")
        return PrimeSet.finite(self.prime_list("}"))

    def prime_list(self, close):
        ps = []
        if self.accept(close):
            return ps
        while True:
            start = self.pos
            n = self.nat()
            if not is_prime(n):
                raise self.error(f"{n} is not a prime", start)
            ps.append(n)
            if self.accept(close):
                return ps
            self.expect(",")

    def formal(self):
        if not self.allow_extended:
            raise self.error("formal families are output-only forms")
        if self.accept("colim["):
            self.ws()
            m = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*").match(self.text, self.pos)
            if not m:
                raise self.error("expected a colimit tag")
            self.pos = m.end()
            self.expect(";")
            index = self.group()
            self.expect(";")
            base = self.group()
            self.expect("]")
            return lambda env: FormalColimit(m.group(), index(env), base(env))
        is_prod = self.accept("Prod_{")
        if not is_prod:
            self.expect("Sum_{")
        if self.accept("p in "):
            primes = self.prime_set()
            self.expect("}")
            self.ws()
            m = _TEMPLATE.match(self.text, self.pos)
            if not m:
                raise self.error("expected a factor template such as Z/p")
            self.pos = m.end()
            cls = FormalProduct if is_prod else FormalSum
            return lambda env: cls(m.group(), primes)
        if is_prod:
            raise self.error("expected 'p in' in a formal product")
        index = self.group()
        self.expect("}")
        base = self.primary()
        return lambda env: IndexedSum(index(env), base(env))

    def group_value(self) -> GroupExpr:
        start = self.pos
        build = self.group()
        return self._build(lambda: build({}), start)

    # -- spaces ------------------------------------------------------------

    def space(self) -> SpaceDesc:
        self.ws()
        start = self.pos
        if self.accept("K("):
            g = self.group_value()
            self.expect(",")
            n = self.nat()
            self.expect(")")
            return self._build(lambda: EM(g, n), start)
        if self.accept("M("):
            g = self.group_value()
            self.expect(",")
            n = self.nat()
            self.expect(")")
            return self._build(lambda: MooreSpace(g, n), start)
        if self.accept("S^"):
            n = self.nat()
            return self._build(lambda: Sphere(n), start)
        if self.accept("pt"):
            return Point()
        if self.accept("space{"):
            return self.generic(start)
        raise self.error("expected a space descriptor")

    def generic(self, start):
        fields = {}
        while True:
            self.ws()
            m = re.compile(r"(pi1|pi2|H|sc|nilp)\s*=").match(self.text, self.pos)
            if not m:
                raise self.error("expected one of pi1=, H=, sc=, nilp=, pi2=")
            key = m.group(1)
            if key in fields:
                raise self.error(f"duplicate field {key!r}")
            self.pos = m.end()
            if key in ("pi1", "pi2"):
                fields[key] = normalize(self.group_value())
            elif key == "H":
                self.expect("[")
                hs = []
                if not self.accept("]"):
                    while True:
                        hs.append(normalize(self.group_value()))
                        if self.accept("]"):
                            break
                        self.expect(",")
                fields["H"] = hs
            else:
                if self.accept("true"):
                    fields[key] = True
                elif self.accept("false"):
                    fields[key] = False
                else:
                    raise self.error("expected true or false")
            if not self.accept(";"):
                break
        self.expect("}")
        pi1 = fields.get("pi1", Trivial())
        sc = fields.get("sc", isinstance(pi1, Trivial))
        return self._build(lambda: Generic(pi1=pi1, simply_connected=sc,
                                           nilpotent=fields.get("nilp", False),
                                           homology=tuple(fields.get("H", ())),
                                           pi2=fields.get("pi2")), start)

    def _build(self, make, start):
        try:
            return make()
        except ParseError:
            raise
        except ValueError as e:
            raise ParseError(str(e), start, self.text) from None


def parse(text: str, allow_extended: bool = False) -> GroupExpr:
    """Parse a group expression; the result is not normalized.

    >>> parse("Z/4 + Z/2")
    Sum(terms=(Cyclic(p=2, k=2), Cyclic(p=2, k=1)))
    >>> parse("Z[1/p]{p=3} * Z/3")
    FreeProduct(factors=(RankOne(t=BaerType(exceptions=((3, inf),), tail=0)), Cyclic(p=3, k=1)))
    """
    p = _Parser(text, allow_extended)
    build = p.group()
    if not p.at_end():
        raise p.error(f"unexpected trailing input {text[p.pos:p.pos + 8]!r}")
    try:
        return build({})
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(str(e), 0, text) from None


def parse_space(text: str, allow_extended: bool = True) -> SpaceDesc:
    """Parse a space descriptor such as ``K(Z,2)`` or ``space{pi1=Z/4; H=[Z/4]}``."""
    p = _Parser(text, allow_extended)
    x = p.space()
    if not p.at_end():
        raise p.error(f"unexpected trailing input {text[p.pos:p.pos + 8]!r}")
    return x


def parse_bounds(text: str) -> dict:
    """Parse ``"2:1, 3:2"`` into ``{2: 1, 3: 2}``."""
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        p, _, k = item.partition(":")
        try:
            p, k = int(p), int(k)
        except ValueError:
            raise ParseError(f"bad bound {item!r}", text.find(item), text) from None
        if not is_prime(p):
            raise ParseError(f"{p} is not a prime", text.find(item), text)
        out[p] = k
    return out
