import pytest
from hypothesis import given, settings, strategies as st

from conftest import baer_types, groups
from moorecell.groups import normalize
from moorecell.moore import (ClassicalCyclic, CofiberOfUnit, MooreModel, NoRecipe, Telescope,
                             Wedge, check_relations, exists_moore, moore_model,
                             presentation_check, recipe_group, relation_matrix)
from moorecell.parsing import parse
from moorecell.radical import PreconditionError
from moorecell.telescope import available_length
from moorecell.verdict import Answer


def g(text):
    return normalize(parse(text))


BATTERY = [
    ("Z", Answer.YES, None), ("Q", Answer.YES, None), ("Z/3", Answer.YES, None),
    ("Z/3 + Z/3", Answer.NO, 2), ("Z + Z/3", Answer.NO, 3), ("Z[1/3]", Answer.YES, None),
    ("Z[1/3] + Z/3", Answer.YES, None), ("Z(3^inf)", Answer.YES, None),
    ("Z(3^inf) + Z/5", Answer.YES, None), ("type(1)", Answer.YES, None),
]


@pytest.mark.parametrize("text, answer, clause", BATTERY)
def test_battery(text, answer, clause):
    v = exists_moore(g(text))
    assert v.answer is answer
    assert all(e.citation == "Theorem 2.1" for e in v.trail)
    if clause is not None:
        assert v.witnesses["clause"] == clause and v.witnesses["prime"] == 3


def test_rank_two_fails_first_clause():
    v = exists_moore(g("Z + Z"))
    assert v.answer is Answer.NO and v.witnesses["clause"] == 1


def test_prufer_is_dimension_certain():
    w = exists_moore(g("Z(7^inf)")).witnesses
    assert w["dimension_certain"] and w["recipe"] == "CofiberOfUnit(type(0; 7:inf))"


def test_free_product_uses_wedge():
    v = exists_moore(g("Z[1/3] * Z/3"))
    assert v.answer is Answer.YES and v.witnesses["construction"] == "wedge"
    assert isinstance(moore_model(g("Z[1/3] * Z/3")).recipe, Wedge)
    bad = exists_moore(g("Z/2 * (Z + Z/2)"))
    assert bad.answer is Answer.NO and bad.witnesses["factor"] == "Z + Z/2"


@pytest.mark.parametrize("text, recipe", [
    ("Z[1/3]", "Telescope(type(0; 3:inf))"),
    ("Z/12", "ClassicalCyclic(12)"),
    ("0", "ClassicalCyclic(1)"),
    ("Z(2^inf) + Z/9", "CofiberOfUnit(type(0; 2:inf; 3:2))"),
])
def test_models(text, recipe):
    assert str(moore_model(g(text)).recipe) == recipe


@pytest.mark.parametrize("text", ["Z(3^inf) + Z(3^inf)", "Z[1/3] + Z/3", "Z(3^inf) + Z/3"])
def test_no_recipe(text):
    m = moore_model(g(text))
    assert isinstance(m, NoRecipe) and "Question 2.4" in m.reason
    assert exists_moore(g(text)).witnesses["dimension_certain"] is False


def test_model_requires_existence():
    with pytest.raises(PreconditionError):
        moore_model(g("Z/2 + Z/2"))


def test_presentation_examples():
    r = presentation_check(moore_model(g("Z[1/5]")), 3)
    assert r.matrix == ((5, -1, 0, 0), (0, 5, -1, 0), (0, 0, 5, -1))
    assert r.rank == 3 and r.passed
    c = presentation_check(MooreModel(g("Z/6"), ClassicalCyclic(6)), 4)
    assert c.matrix == ((6,),) and c.passed
    assert not check_relations([[0]]).passed


def test_truncation_beyond_finite_telescope():
    m = moore_model(g("type(0; 2:2)"))
    with pytest.raises(ValueError):
        presentation_check(m, 5)


def test_wedge_matrix_is_block_diagonal():
    rows = relation_matrix(moore_model(g("Z[1/2] * Z/3")).recipe, 2)
    assert rows == [[3, 0, 0, 0], [0, 2, -1, 0], [0, 0, 2, -1]]


@settings(max_examples=400, deadline=None)
@given(groups(3))
def test_recipe_round_trip(G):
    v = exists_moore(G)
    if v.answer is not Answer.YES:
        return
    m = moore_model(G)
    assert isinstance(m, (MooreModel, NoRecipe))
    if isinstance(m, MooreModel):
        assert recipe_group(m.recipe) == normalize(G)
        assert v.witnesses["dimension_certain"]


@settings(max_examples=100, deadline=None)
@given(baer_types(), st.integers(0, 64), st.booleans())
def test_presentation_injective_at_every_truncation(t, n, cofiber):
    recipe = CofiberOfUnit(t) if cofiber else Telescope(t)
    if recipe_group(recipe) is None:
        return
    n = min(n, int(min(available_length(t), 64)))
    r = presentation_check(MooreModel(recipe_group(recipe), recipe), n)
    assert r.passed and r.rank == len(r.matrix)
