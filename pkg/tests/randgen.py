"""Seeded generators for the acceptance suite (reproducible counts, no shrinking)."""

import random

from moorecell.groups import INF, BaerType, Cyclic, FreeProduct, Int, Prufer, RankOne, Sum

SMALL_PRIMES = (2, 3, 5, 7, 11)


def baer_type(rng: random.Random, finite_only=False) -> BaerType:
    values = (0, 1, 2, 3, 4, 5, 6) if finite_only else (0, 1, 2, 3, 6, INF)
    ex = {p: rng.choice(values) for p in rng.sample(SMALL_PRIMES, rng.randint(0, 3))}
    tail = 0 if finite_only else rng.choice((0, 0, 1, INF))
    return BaerType(ex, tail)


def primitive(rng: random.Random):
    k = rng.randrange(5)
    p = rng.choice(SMALL_PRIMES[:4])
    if k == 0:
        return Int()
    if k == 1:
        return Cyclic(p, rng.randint(1, 3))
    if k == 2:
        return Prufer(p)
    return RankOne(baer_type(rng))


def abelian(rng: random.Random, max_terms=3):
    terms = [primitive(rng) for _ in range(rng.randint(1, max_terms))]
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


def group(rng: random.Random):
    if rng.random() < 0.2:
        return FreeProduct(tuple(abelian(rng, 2) for _ in range(rng.randint(2, 3))))
    return abelian(rng)


def _atom_text(rng: random.Random, depth: int) -> str:
    k = rng.randrange(10)
    p = rng.choice(SMALL_PRIMES)
    if k == 0:
        return rng.choice(["0", "Z", "Q"])
    if k in (1, 2):
        return f"Z/{rng.randint(1, 720)}"  # composite orders on purpose
    if k == 3:
        return f"Z({p}^inf)"
    if k == 4:
        ps = sorted(rng.sample(SMALL_PRIMES, rng.randint(1, 3)))
        return "Z[1/" + ",".join(map(str, ps)) + "]"
    if k == 5:
        tail = rng.choice(["0", "1", "inf", "2"])
        ex = "".join(f"; {q}:{rng.choice(['0', '1', '3', 'inf'])}"
                     for q in sorted(rng.sample(SMALL_PRIMES, rng.randint(0, 2))))
        return f"type({tail}{ex})"
    if k == 6:
        return f"Z[1/q]{{q={p}}}"
    if k == 7:
        return f"Z(r^inf){{r={p}}}"
    if depth < 2:
        return "(" + sum_text(rng, depth + 1) + ")"
    return "Z"


def sum_text(rng: random.Random, depth: int = 0) -> str:
    return " + ".join(_atom_text(rng, depth) for _ in range(rng.randint(1, 3)))


def expression_text(rng: random.Random) -> str:
    """Group text; sums may nest, a free product only at the top."""
    if rng.random() < 0.2:
        return " * ".join(sum_text(rng, 2) for _ in range(rng.randint(2, 3)))
    return sum_text(rng)
