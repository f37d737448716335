import pytest

from data_models.credits import CreditTerm
from data_models.la_syntax import (
    BIT_T, LA, NAT_T, UNIT_T, App, Cons, Lam, Nil, Num, Pack, Prim, Save, TBang, TExists, TLolli,
    TTensor, Tick, Unpack, Var, bit_list, contains_tick, credit_subst, is_value, list_literal, one_bit,
    type_credit_subst, type_equal, zero_bit,
)


def test_substitution_avoids_capture():
    term = Lam("y", NAT_T, App(Var("x"), Var("y")))
    out = LA.substitute(term, "x", Var("y"))
    assert isinstance(out, Lam) and out.var != "y"
    assert out.body == App(Var("y"), Var(out.var))
    assert out.free_vars == frozenset({"y"})

def test_substitution_stops_at_shadowing_binder():
    term = Lam("x", NAT_T, Var("x"))
    assert LA.substitute(term, "x", Num(3)) is term

def test_free_vars_through_unpack():
    term = Unpack("a", "v", Var("p"), App(Var("v"), Var("q")))
    assert term.free_vars == frozenset({"p", "q"})

def test_type_equal_up_to_existential_renaming():
    a = TExists("a", TBang(1, CreditTerm.var("a"), NAT_T))
    b = TExists("b", TBang(1, CreditTerm.var("b"), NAT_T))
    assert type_equal(a, b)
    assert not type_equal(a, TExists("b", TBang(1, CreditTerm.constant(1), NAT_T)))

def test_type_credit_subst_renames_bound_variable():
    ty = TExists("a", TTensor(TBang(1, CreditTerm.var("a"), UNIT_T), TBang(1, CreditTerm.var("b"), UNIT_T)))
    out = type_credit_subst(ty, "b", CreditTerm.var("a"))
    assert out.var != "a"
    assert out.body.right.credit == CreditTerm.var("a")
    assert out.body.left.credit == CreditTerm.var(out.var)

def test_credit_subst_reaches_terms():
    ty = TExists("a", TBang(1, CreditTerm.var("a"), NAT_T))
    term = Pack(CreditTerm.var("c"), ty, Save(1, CreditTerm.var("c"), Num(0)))
    assert term.credit_vars == frozenset({"c"})
    out = credit_subst(term, "c", CreditTerm.constant(2))
    assert out.credit == CreditTerm.constant(2) and out.body.credit == CreditTerm.constant(2)

@pytest.mark.parametrize("term, expected", [
    (Num(3), True),
    (one_bit(), True),
    (bit_list([1, 0]), True),
    (Cons(Tick(Num(0)), Nil(NAT_T)), False),
    (App(Lam("x", NAT_T, Var("x")), Num(1)), False),
])
def test_is_value(term, expected):
    assert is_value(term) is expected

def test_bit_list_is_least_significant_first():
    lst = bit_list([1, 0])
    assert lst.head == one_bit() and lst.tail.head == zero_bit() and lst.tail.tail == Nil(BIT_T)
    assert list_literal([], NAT_T) == Nil(NAT_T)

def test_contains_tick():
    assert contains_tick(Lam("x", NAT_T, Tick(Var("x"))))
    assert not contains_tick(Prim("add", (Num(1), Num(2))))

@pytest.mark.parametrize("op, args", [("mul", (Num(1), Num(2))), ("phi", (Num(1), Num(2)))])
def test_prim_arity_checked(op, args):
    with pytest.raises(ValueError): Prim(op, args)

def test_types_are_hashable_values():
    assert {TLolli(NAT_T, NAT_T), TLolli(NAT_T, NAT_T)} == {TLolli(NAT_T, NAT_T)}
