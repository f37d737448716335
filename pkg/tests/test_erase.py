import pytest

from analysis.erase import erase, erase_type, eval_stlc, is_code_free
from analysis.interp import run
from data_models.credits import CreditTerm
from data_models.la_syntax import (
    BIT_T, NAT_T, UNIT_T, App, Create, Inl, Inr, Num, Save, Spend, TBang, TExists, TList, TLolli, TSum,
    TWith, Tick, Transfer, UnitVal, Var, bit_list, list_literal,
)
from data_models.stlc_syntax import SCons, SInl, SInr, SLet, SNil, SNum, SUnit

PLAIN_BIT_T = TSum(UNIT_T, UNIT_T)


@pytest.mark.parametrize("ty, erased", [
    (TBang(2, CreditTerm.constant(1), NAT_T), NAT_T),
    (TExists("a", TBang(1, CreditTerm.var("a"), UNIT_T)), UNIT_T),
    (TList(BIT_T), TList(PLAIN_BIT_T)),
    (TLolli(TBang(1, CreditTerm(), NAT_T), NAT_T), TLolli(NAT_T, NAT_T)),
])
def test_erase_type(ty, erased):
    assert erase_type(ty) == erased

@pytest.mark.parametrize("ty, expected", [
    (TList(BIT_T), True),
    (TLolli(NAT_T, NAT_T), False),
    (TWith(NAT_T, NAT_T), False),
    (TBang(1, CreditTerm(), TLolli(NAT_T, NAT_T)), False),
])
def test_is_code_free(ty, expected):
    assert is_code_free(ty) is expected

def test_credit_operations_vanish():
    assert erase(Create(CreditTerm.constant(1), Spend(CreditTerm.constant(1), UnitVal()))) == SUnit()
    assert erase(Save(1, CreditTerm.constant(3), Num(4))) == SNum(4)

def test_ghost_elimination_keeps_ticks():
    ticked = Create(CreditTerm.constant(1), Tick(UnitVal()))
    assert eval_stlc(erase(ticked)) == (SUnit(), 1)

def test_transfer_becomes_let():
    term = Transfer("u", Save(1, CreditTerm(), Num(2)), Var("u"))
    out = erase(term, ghost_elimination=False)
    assert isinstance(out, SLet) and out.var == "u"
    assert eval_stlc(out) == (SNum(2), 0)

def test_erased_bits():
    value, ticks = eval_stlc(erase(bit_list([1, 0])))
    assert value == SCons(SInr(SUnit()), SCons(SInl(SUnit()), SNil())) and ticks == 0

@pytest.mark.parametrize("k", [0, 1, 5, 12])
def test_erasure_preserves_ticks(counter_program, k):
    term = App(counter_program.expand("set"), Num(k))
    _, n, _ = run(term)
    assert eval_stlc(erase(term))[1] == n

@pytest.mark.parametrize("bits", [[], [1], [1, 1, 0, 1], [0, 0, 1]])
def test_erased_increment_matches_plain_counter(counter_program, bits):
    plain_bits = list_literal([Inr(UnitVal(), UNIT_T) if b else Inl(UnitVal(), UNIT_T) for b in bits], PLAIN_BIT_T)
    inc = eval_stlc(erase(App(counter_program.expand("inc"), bit_list(bits))))
    plain = eval_stlc(erase(App(counter_program.expand("plain_inc"), plain_bits)))
    assert inc == plain
