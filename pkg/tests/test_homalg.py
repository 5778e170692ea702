import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import abelian_groups, finite_groups
from moorecell.groups import FragmentError, Sum, normalize, to_text
from moorecell.homalg import (Unsupported, bifunctor, bifunctor_with_trail, ext, hom,
                              parse_rules, rule_table, tensor)
from moorecell.oracle import FiniteAb, finite_bifunctor
from moorecell.parsing import parse

KINDS = ("hom", "ext", "tensor", "tor")


def g(text):
    return normalize(parse(text))


@pytest.mark.parametrize("kind, a, b, expected", [
    ("ext", "type(1)", "Z", "(Prod_{p in P} Z/p)/Z"),
    ("tensor", "Z/3", "Z[1/3]", "0"),
    ("tensor", "Z/3", "Z[1/2]", "Z/3"),
    ("ext", "Z(2^inf)", "Z", "Zhat(2)"),
    ("hom", "Q", "Z(3^inf)", "Qhat(3)"),
    ("hom", "Z(2^inf)", "Z/2", "0"),
    ("hom", "Z[1/2]", "Z", "0"),
    ("hom", "Z/4", "Z/2 + Z/3", "Z/2"),
    ("ext", "Z/8", "Z/4", "Z/4"),
    ("ext", "Z", "Z/5", "0"),
    ("tor", "Z(2^inf)", "Z/2", "Z/2"),
    ("tor", "Z/9", "Z/27", "Z/9"),
    ("ext", "Z/2", "Q", "0"),
])
def test_examples(kind, a, b, expected):
    assert to_text(bifunctor(kind, g(a), g(b))) == expected


@pytest.mark.parametrize("pa, pb", [(2, 2), (2, 4), (3, 1), (3, 5)])
def test_ext_cyclic_min(pa, pb):
    assert ext(g(f"Z/{2 ** pa}"), g(f"Z/{2 ** pb}")) == g(f"Z/{2 ** min(pa, pb)}")


def test_rank_one_ext_is_unsupported_outside_decidable_cases():
    assert isinstance(ext(g("Z[1/2]"), g("Z[1/3]")), Unsupported)
    assert ext(g("Z[1/2]"), g("Q")) == g("0")


def test_trail_lists_rules():
    value, rules = bifunctor_with_trail("ext", g("Z(2^inf)"), g("Z"))
    assert to_text(value) == "Zhat(2)"
    assert rules and all(r.status == "derived" for r in rules)


def test_rejects_free_products_and_extended_inputs():
    with pytest.raises(FragmentError):
        hom(g("Z/2 * Z/3"), g("Z"))
    with pytest.raises(FragmentError):
        tensor(parse("Zhat(2)", allow_extended=True), g("Z"))


def test_rule_table_statuses():
    finite = {"0", "Z/p^a", "Z/q^b"}
    for r in rule_table():
        if r.status == "verified":
            # a wildcard side is only allowed against the zero group
            assert {r.lhs, r.rhs} <= finite | {"X"} and "0" in (r.lhs, r.rhs) or \
                {r.lhs, r.rhs} <= finite, r
        assert r.note


@pytest.mark.parametrize("bad", [
    "hom | Z | Z | | Z | verified",
    "cohom | Z | Z | | Z | derived | x",
    "hom | W | Z | | Z | derived | x",
    "hom | Z | Z | p~q | Z | derived | x",
    "hom | Z | Z | | Z | guessed | x",
])
def test_rule_parser_rejects_malformed_lines(bad):
    with pytest.raises(ValueError):
        parse_rules(bad)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(KINDS), finite_groups(), finite_groups())
def test_agrees_with_finite_oracle(kind, a, b):
    assume(FiniteAb.from_group(a).size * FiniteAb.from_group(b).size <= 2 ** 16)
    expected = finite_bifunctor(kind, FiniteAb.from_group(a), FiniteAb.from_group(b))
    assert bifunctor(kind, a, b) == expected.to_group()


def _additive(kind, a1, a2, b, left):
    whole = bifunctor(kind, normalize(Sum((a1, a2))), b) if left else \
        bifunctor(kind, b, normalize(Sum((a1, a2))))
    parts = [bifunctor(kind, x, b) if left else bifunctor(kind, b, x) for x in (a1, a2)]
    if any(isinstance(v, Unsupported) for v in parts):
        assert isinstance(whole, Unsupported)
        return
    assert whole == normalize(Sum(tuple(parts)))


@settings(max_examples=400, deadline=None)
@given(st.sampled_from(KINDS), abelian_groups(2), abelian_groups(2), abelian_groups(2),
       st.booleans())
def test_additive_in_each_variable(kind, a1, a2, b, left):
    _additive(kind, a1, a2, b, left)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(("tensor", "tor")), abelian_groups(3), abelian_groups(3))
def test_symmetric_kinds(kind, a, b):
    assert bifunctor(kind, a, b) == bifunctor(kind, b, a)
