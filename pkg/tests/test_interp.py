import pytest
from hypothesis import given, strategies as st

from analysis.errors import FuelExhausted, InfiniteCreditOverflow, StuckTerm
from analysis.interp import Evaluator, evaluate, phi, run, scale_delta
from data_models.credits import CreditTerm
from data_models.extended import INF
from data_models.la_syntax import (
    NAT_T, UNIT_T, App, Create, Inl, Inr, Lam, LetPair, Num, Pair, Prim, Save, Spend, Tick, Transfer,
    UnitVal, Var, bit_list,
)


def _bits(value):
    out = []
    while hasattr(value, "head"):
        out.append(1 if isinstance(value.head, Inr) else 0)
        value = value.tail
    return out


@pytest.mark.parametrize("bits, after, n, r", [
    ([], [1], 1, 1),
    ([0], [1], 1, 1),
    ([1], [0, 1], 2, 0),
    ([1, 1, 0], [0, 0, 1], 3, -1),
    ([1, 1, 1], [0, 0, 0, 1], 4, -2),
])
def test_increment(counter_program, bits, after, n, r):
    value, ticks, delta = run(App(counter_program.expand("inc"), bit_list(bits)))
    assert _bits(value) == after and (ticks, delta) == (n, r)

@pytest.mark.parametrize("k, ticks", [(0, 0), (1, 1), (4, 7), (8, 15)])
def test_set_ticks(counter_program, k, ticks):
    outcome = evaluate(App(counter_program.expand("set"), Num(k)))
    assert outcome.cost.n == ticks
    assert outcome.cost.r == bin(k).count("1")

def test_trace_records_every_firing(counter_program, evaluator):
    outcome = evaluator.evaluate(App(counter_program.expand("inc"), bit_list([1, 0])))
    rules = [str(rec) for rec in outcome.trace]
    assert rules == ["create 0 1", "tick 1 0", "spend 0 -1", "tick 1 0"]
    assert sum(rec.dn for rec in outcome.trace) == outcome.cost.n
    assert sum(rec.dr for rec in outcome.trace) == outcome.cost.r

def test_trace_off_by_default():
    assert evaluate(Tick(UnitVal())).trace is None

@pytest.mark.parametrize("m, expected", [(0, 0), (1, 1), (2, 2), (3, 2), (4, 3), (7, 3), (8, 4)])
def test_phi(m, expected):
    assert phi(m) == expected

@pytest.mark.parametrize("op, args, value", [
    ("add", (2, 3), Num(5)),
    ("leq", (2, 2), Inl(UnitVal(), UNIT_T)),
    ("leq", (3, 2), Inr(UnitVal(), UNIT_T)),
    ("phi", (5,), Num(3)),
    ("dup", (4,), Pair(Num(4), Num(4))),
])
def test_primitives_are_free(op, args, value):
    assert run(Prim(op, tuple(Num(a) for a in args))) == (value, 0, 0)

def test_save_scales_delta_but_not_ticks():
    term = Save(3, CreditTerm(), Tick(Create(CreditTerm.constant(1), UnitVal())))
    value, n, r = run(term)
    assert isinstance(value, Save) and (n, r) == (1, 3)

def test_letpair_scales_scrutinee_delta():
    term = LetPair("a", "b", Create(CreditTerm.constant(2), Pair(Num(1), Num(2))), Prim("add", (Var("a"), Var("b"))), mult=2)
    assert run(term) == (Num(3), 0, 4)

def test_transfer_runs_body_on_saved_value():
    term = Transfer("u", Save(1, CreditTerm.constant(1), UnitVal()), Spend(CreditTerm.constant(1), Var("u")))
    assert run(term) == (UnitVal(), 0, -1)

def test_infinite_multiplicity_with_nonzero_delta():
    with pytest.raises(InfiniteCreditOverflow):
        run(Save(INF, CreditTerm(), Create(CreditTerm.constant(1), UnitVal())))
    assert run(Save(INF, CreditTerm(), Tick(UnitVal())))[1:] == (1, 0)

@given(st.one_of(st.integers(min_value=1, max_value=50), st.just(INF)))
def test_scale_delta_of_zero(k):
    assert scale_delta(k, 0, "save") == 0

def test_fuel_exhausted(counter_program):
    with pytest.raises(FuelExhausted): Evaluator(fuel=50).evaluate(App(counter_program.expand("set"), Num(16)))

def test_stuck_on_open_term():
    with pytest.raises(StuckTerm): run(App(Lam("x", NAT_T, Var("y")), Num(1)))
