import pytest
from hypothesis import given, settings, strategies as st

from conftest import baer_types
from moorecell.coeffs import derive_coeffs, hr_acyclic
from moorecell.groups import INF, BaerType, normalize, to_text
from moorecell.parsing import parse
from moorecell.primes import PrimeSet
from moorecell.telescope import (available_length, baer_equiv, cokernel_of_unit_inclusion,
                                 telescope_prefix)
from moorecell.verdict import Answer


def g(text):
    return normalize(parse(text))


@pytest.mark.parametrize("p", [2, 3, 7])
def test_single_prime_telescope(p):
    pre = telescope_prefix(BaerType({p: INF}), 4)
    assert pre.multipliers == (p,) * 4
    assert pre.mseq == (p, p**2, p**3, p**4)


def test_tail_one_telescope():
    pre = telescope_prefix(BaerType(tail=1), 5)
    assert pre.multipliers == (2, 3, 5, 7, 11) and pre.mseq == (2, 3, 5, 7, 11)


def test_rationals_telescope():
    pre = telescope_prefix(BaerType(tail=INF), 6)
    assert pre.mseq == (2, 3, 4, 5, 7, 8)
    assert pre.multipliers == (2, 3, 2, 5, 7, 2)


def test_finite_type_is_exhausted():
    pre = telescope_prefix(BaerType({2: 2, 3: 1}), 10)
    assert pre.exhausted and pre.mseq == (2, 3, 4) and pre.product() == 12
    assert str(pre) == "S^1 --2--> S^1 --3--> S^1 --2--> S^1"


def test_cokernels():
    assert to_text(cokernel_of_unit_inclusion(BaerType({3: INF}))) == "Z(3^inf)"
    assert to_text(cokernel_of_unit_inclusion(BaerType())) == "0"
    assert to_text(cokernel_of_unit_inclusion(BaerType({2: 3}))) == "Z/8"


def test_baer_equiv():
    assert baer_equiv(BaerType({3: INF}), BaerType({3: INF, 2: 1}))
    assert not baer_equiv(BaerType({3: INF}), BaerType())
    assert not baer_equiv(BaerType(tail=1), BaerType())


def _valuation(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@settings(max_examples=200, deadline=None)
@given(baer_types(), st.integers(1, 64))
def test_valuation_bookkeeping(t, n):
    pre = telescope_prefix(t, n)
    prod = pre.product()
    for p in (2, 3, 5, 7, 11, 13):
        count = sum(1 for m in pre.mseq if _valuation(m, p) > 0 and m == p ** _valuation(m, p))
        assert _valuation(prod, p) == count
    assert len(pre) == min(n, available_length(t))
    # the multipliers are the ratios of consecutive terms of the increasing m-sequence
    assert list(pre.mseq) == sorted(pre.mseq) and len(set(pre.mseq)) == len(pre.mseq)


def test_finite_telescope_cokernel_matches():
    t = BaerType({2: 3, 5: 1})
    pre = telescope_prefix(t, 100)
    assert pre.exhausted
    assert normalize(parse(f"Z/{pre.product()}")) == cokernel_of_unit_inclusion(t)


# -- coefficients ----------------------------------------------------------


@pytest.mark.parametrize("text, J, H, R", [
    ("Z[1/3] * Z/3", "{}", "Z", "0"),
    ("Z(3^inf)", "P\\{3}", "Z/3", "Z[1/3]"),
    ("Z(2^inf)", "P\\{2}", "Z/2", "Z[1/2]"),
    ("Z", "{}", "Z", "0"),
    ("Z[1/2]", "{2}", "Z[1/2]", "Z/2"),
    ("Q", "P", "Q", "Sum_{p in P} Z/p"),
    ("Z/6", "P\\{2,3}", "Z/2 + Z/3", "Z[1/2,3]"),
])
def test_derive_coeffs(text, J, H, R):
    c = derive_coeffs(g(text))
    assert (str(c.J), to_text(c.H), str(c.R)) == (J, H, R)


def test_coeffs_J_definition():
    c = derive_coeffs(g("Z[1/2,3] + Z/5"))
    assert c.J == PrimeSet.finite([2, 3]) and not c.torsion


def test_hr_acyclic_examples():
    fields = derive_coeffs(g("Z[1/5]"))
    v = hr_acyclic([g("0"), g("Z(5^inf)")], fields)
    assert v.answer is Answer.NO and v.witnesses["degree"] == 2
    local = derive_coeffs(g("Z/5"))
    assert hr_acyclic([g("0"), g("Z/5"), g("Z/25")], local).answer is Answer.YES
    zero = derive_coeffs(g("Z"))
    assert hr_acyclic([g("Q"), g("Z/7 + Z")], zero).answer is Answer.YES
    assert hr_acyclic([g("Z/2")], local).answer is Answer.NO
