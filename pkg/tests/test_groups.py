import pytest
from hypothesis import given, settings

from conftest import abelian_groups, composite_text, groups
from moorecell.groups import (INF, BaerType, Cyclic, FragmentError, FreeProduct, Int,
                              Padic, Prufer, RankOne, Sum, Trivial, abelianize,
                              classify, normalize, summands, to_text)
from moorecell.parsing import ParseError, parse, parse_bounds, parse_space
from moorecell.spaces import EM, Generic, MooreSpace, Point, Sphere


def test_parse_sum_keeps_order():
    assert parse("Z/4 + Z/2") == Sum((Cyclic(2, 2), Cyclic(2, 1)))


def test_parse_bound_variable():
    g = parse("Z[1/p]{p=3} * Z/3")
    assert g == FreeProduct((RankOne(BaerType({3: INF})), Cyclic(3, 1)))


@pytest.mark.parametrize("text, pos", [("Z/0", 2), ("Z/(3", 2), ("Z(4^inf)", 2), ("Z +", 3)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert e.value.pos == pos


def test_unbound_variable_rejected():
    with pytest.raises(ParseError):
        parse("Z[1/p]")


def test_extended_forms_need_flag():
    with pytest.raises(ParseError):
        parse("Zhat(3)")
    assert parse("Zhat(3)", allow_extended=True) == Padic(3)


@pytest.mark.parametrize("text, expected", [
    ("Z/6", "Z/2 + Z/3"),
    ("Z/2 + Z/2 + 0", "Z/2 + Z/2"),
    ("type(0)", "Z"),
    ("type(inf)", "Q"),
    ("type(0; 3:inf)", "Z[1/3]"),
    ("Z/3 * 0", "Z/3"),
    ("(Z/2 * Z/3) * Z", "Z * Z/2 * Z/3"),
])
def test_normalize_examples(text, expected):
    assert to_text(normalize(parse(text))) == expected


def test_abelianize():
    assert to_text(abelianize(parse("Z[1/3] * Z/3"))) == "Z/3 + Z[1/3]"
    g = normalize(parse("Z/2 + Q"))
    assert abelianize(g) == g


def test_classify_prufer():
    r = classify(Prufer(5))
    assert r.is_torsion and r.is_p_divisible(5)
    assert not r.is_uniquely_p_divisible(5) and r.is_uniquely_p_divisible(3)
    assert r.exponent(5) == INF


def test_classify_int_and_cyclic():
    r = classify(Int())
    assert not any(r.is_uniquely_p_divisible(p) for p in (2, 3, 5, 7))
    c = classify(Cyclic(3, 2))
    assert c.is_uniquely_p_divisible(2) and not c.is_p_divisible(3) and c.exponent(3) == 2


def test_classify_rejects_extended():
    with pytest.raises(FragmentError):
        classify(Padic(2))


def test_classify_rank():
    assert classify(normalize(parse("Z + Z/2"))).rank == 1
    assert to_text(classify(normalize(parse("Z[1/2] + Z/4 + Z(3^inf)"))).torsion_subgroup) \
        == "Z/4 + Z(3^inf)"


def test_parse_space_forms():
    assert parse_space("K(Z,2)") == EM(Int(), 2)
    assert parse_space("S^2") == Sphere(2)
    assert parse_space("M(Z/3,2)") == MooreSpace(Cyclic(3, 1), 2)
    assert parse_space("pt") == Point()
    assert isinstance(parse_space("space{pi1=Z/4; H=[Z/4]}"), Generic)


def test_parse_bounds():
    assert parse_bounds("2:1, 3:2") == {2: 1, 3: 2}
    with pytest.raises(ParseError):
        parse_bounds("4:1")


@settings(max_examples=1000, deadline=None)
@given(groups())
def test_round_trip_and_idempotence(g):
    n = normalize(g)
    assert normalize(n) == n
    assert normalize(parse(to_text(n))) == n
    assert to_text(parse(to_text(n))) == to_text(n) or normalize(parse(to_text(n))) == n


@settings(max_examples=300, deadline=None)
@given(composite_text())
def test_composite_orders_decompose(text):
    g = normalize(parse(text))
    for s in summands(g):
        assert not isinstance(s, Trivial)
    # every cyclic summand is a prime power
    for s in summands(g):
        if isinstance(s, Cyclic):
            assert s.k >= 1
    assert normalize(parse(to_text(g))) == g


@settings(max_examples=200, deadline=None)
@given(abelian_groups())
def test_sum_is_order_independent(g):
    ts = summands(g)
    assert normalize(Sum(tuple(reversed(ts)))) == normalize(g)


def test_composite_prime_list_rejected():
    with pytest.raises(ParseError):
        parse("Z[1/6]")
