"""Shared hypothesis strategies for fragment groups, types and spaces."""

from hypothesis import strategies as st

from moorecell.groups import (INF, BaerType, Cyclic, FreeProduct, Int, Prufer,
                              RankOne, Sum, Trivial)

PRIMES = (2, 3, 5, 7)

primes = st.sampled_from(PRIMES)
exps = st.sampled_from((0, 1, 2, 3, INF))


@st.composite
def baer_types(draw, max_exceptions=3):
    ex = draw(st.dictionaries(primes, exps, max_size=max_exceptions))
    tail = draw(st.sampled_from((0, 0, 1, INF)))
    return BaerType(ex, tail)


def primitives():
    return st.one_of(
        st.just(Trivial()),
        st.just(Int()),
        st.builds(Cyclic, primes, st.integers(1, 4)),
        st.builds(Prufer, primes),
        baer_types().map(RankOne),
    )


def abelian_groups(max_terms=4):
    return st.lists(primitives(), min_size=1, max_size=max_terms).map(
        lambda ts: ts[0] if len(ts) == 1 else Sum(tuple(ts)))


def groups(max_terms=4):
    """Abelian sums, occasionally wrapped in an outer free product."""
    free = st.lists(abelian_groups(3), min_size=2, max_size=3).map(
        lambda fs: FreeProduct(tuple(fs)))
    return st.one_of(abelian_groups(max_terms), abelian_groups(max_terms), free)


def finite_groups(max_terms=3):
    """Finite sums of cyclic p-groups, order kept small."""
    return st.lists(st.builds(Cyclic, st.sampled_from((2, 3, 5)), st.integers(1, 3)),
                    min_size=0, max_size=max_terms).map(
        lambda ts: Sum(tuple(ts)) if ts else Trivial())


def composite_text():
    """Expression text that uses composite cyclic orders such as Z/12."""
    atom = st.one_of(
        st.integers(1, 360).map(lambda n: f"Z/{n}"),
        st.sampled_from(["Z", "Q", "0", "Z(5^inf)", "Z[1/2,3]", "type(1; 2:0)"]),
    )
    return st.lists(atom, min_size=1, max_size=4).map(" + ".join)


# -- acceptance report ------------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
