import pytest
from hypothesis import given, strategies as st

from data_models.credits import CreditTerm, ResourceTerm, ZERO_CREDIT, resource_leq, resource_subst
from data_models.extended import INF

coeffs = st.one_of(st.integers(min_value=0, max_value=5), st.just(INF))
credit_terms = st.builds(
    CreditTerm.make,
    st.dictionaries(st.sampled_from(["a", "b", "c"]), coeffs, max_size=3),
    coeffs,
)


def test_normal_form_drops_zero_coefficients():
    assert CreditTerm.make({"a": 0, "b": 2}) == CreditTerm.make({"b": 2})
    assert CreditTerm.make({"a": 1}).plus(CreditTerm.make({"a": 2}, 1)) == CreditTerm.make({"a": 3}, 1)

@pytest.mark.parametrize("term, text", [
    (CreditTerm.make({"a": 2, "b": 1}, 1), "2*a+b+1"),
    (ZERO_CREDIT, "0"),
    (CreditTerm.constant(INF), "inf"),
])
def test_str(term, text):
    assert str(term) == text

def test_subst_scales_the_replacement():
    c = CreditTerm.make({"a": 2}, 1)
    assert c.subst("a", CreditTerm.make({"b": 1}, 3)) == CreditTerm.make({"b": 2}, 7)
    assert c.subst("z", CreditTerm.constant(9)) == c

def test_closed_value():
    assert CreditTerm.constant(4).closed_value() == 4
    with pytest.raises(ValueError): CreditTerm.var("a").closed_value()

def test_monus_and_join():
    a = CreditTerm.make({"a": 3}, 1)
    b = CreditTerm.make({"a": 1, "b": 2}, 4)
    assert a.monus(b) == CreditTerm.make({"a": 2})
    assert a.join(b) == CreditTerm.make({"a": 3, "b": 2}, 4)

def test_negative_constant_rejected():
    with pytest.raises(ValueError): CreditTerm.constant(-1)

def test_resource_terms():
    f = ResourceTerm.make({"x": 2, "y": 1}, 1)
    assert f.coefficient("x") == 2 and f.coefficient("z") == 0
    assert f.without("x") == ResourceTerm.make({"y": 1}, 1)
    assert resource_leq(ResourceTerm.make({"x": 1}), f)
    assert not resource_leq(f, ResourceTerm.make({"x": 2}))
    # x used twice, each use costing 1·y + 3
    g = resource_subst(f, "x", ResourceTerm.make({"y": 1}, 3))
    assert g == ResourceTerm.make({"y": 3}, 7)

@given(credit_terms, credit_terms)
def test_plus_is_commutative_and_monotone(a, b):
    assert a.plus(b) == b.plus(a)
    assert a.leq(a.plus(b))

@given(credit_terms, credit_terms)
def test_join_is_an_upper_bound(a, b):
    j = a.join(b)
    assert a.leq(j) and b.leq(j)

@given(credit_terms, credit_terms)
def test_monus_plus_covers(a, b):
    assert a.leq(a.monus(b).plus(b))


def test_of_bank_accepts_plain_numbers():
    assert ResourceTerm.of_bank(0) == ResourceTerm.make(bank=0)
    assert ResourceTerm.of_bank(3).bank == CreditTerm.constant(3)
    assert ResourceTerm.of_bank(INF).bank.const == INF
    assert ResourceTerm.make(bank=2).leq(ResourceTerm.of_bank(2))
