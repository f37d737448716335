import pytest
from hypothesis import given, strategies as st

from data_models.extended import (
    INF, check_nat, ext_add, ext_max, ext_min, ext_monus, ext_mul, ext_neg, format_ext, parse_ext,
)

ext_nats = st.one_of(st.integers(min_value=0, max_value=10_000), st.just(INF))
ext_ints = st.one_of(st.integers(min_value=-10_000, max_value=10_000), st.just(INF))


def test_inf_is_a_singleton_above_every_integer():
    assert INF is type(INF)()
    assert 10 ** 12 < INF and INF > -5 and INF >= INF and not INF < INF
    assert max(3, INF, 7) is INF and sorted([INF, 2, 1]) == [1, 2, INF]

@pytest.mark.parametrize("k, m, expected", [
    (INF, 0, 0), (0, INF, 0), (INF, 3, INF), (2, INF, INF), (INF, -4, 0), (3, 4, 12), (INF, INF, INF),
])
def test_ext_mul_table(k, m, expected):
    assert ext_mul(k, m) == expected

@pytest.mark.parametrize("a, b, expected", [(5, 3, 2), (3, 5, 0), (INF, 3, INF), (3, INF, 0), (INF, INF, 0)])
def test_ext_monus_table(a, b, expected):
    assert ext_monus(a, b) == expected

def test_negation_and_min():
    assert ext_neg(4) == -4 and ext_neg(INF) is INF
    assert ext_min(INF, 3) == 3 and ext_min(2, 3) == 2

@pytest.mark.parametrize("text, value", [("7", 7), ("-2", -2), ("inf", INF), ("∞", INF), (" inf ", INF)])
def test_parse_ext(text, value):
    assert parse_ext(text) == value

def test_format_ext():
    assert format_ext(INF) == "inf" and format_ext(-3) == "-3"

@pytest.mark.parametrize("bad", [-1, 1.5, True, "3"])
def test_check_nat_rejects(bad):
    with pytest.raises(ValueError): check_nat(bad)

@given(ext_ints, ext_ints)
def test_add_and_max_commute(a, b):
    assert ext_add(a, b) == ext_add(b, a)
    assert ext_max(a, b) == ext_max(b, a)

@given(ext_nats, ext_nats)
def test_monus_is_least_difference(a, b):
    d = ext_monus(a, b)
    assert ext_add(d, b) >= a
    if d != 0 and d is not INF:
        assert ext_add(d - 1, b) < a
