import pytest

from analysis.errors import LCTypeError
from analysis.lc_typecheck import lc_typecheck
from data_models.extended import INF
from data_models.lc_syntax import (
    COST_T, DOLLAR_T, LC_NAT_T, LC_UNIT_T, CAdd, CApp, CCase, CConst, CCons, CInl, CLam, CListRec,
    CNatRec, CNil, CNum, CPair, CPrim, CScale, CSnd, CUnitVal, CVar, DAdd, DConst, LCArrow, LCList,
    LCProd, LCSum, ToCost,
)


def test_arithmetic_types():
    assert lc_typecheck({}, CAdd(CConst(1), CScale(INF, CConst(2)))) == COST_T
    assert lc_typecheck({"a": DOLLAR_T}, ToCost(DAdd(CVar("a"), DConst(1)))) == COST_T
    with pytest.raises(LCTypeError): lc_typecheck({}, CAdd(CConst(1), DConst(1)))
    with pytest.raises(LCTypeError): lc_typecheck({}, ToCost(CConst(1)))

def test_contraction_is_allowed():
    term = CLam("x", COST_T, CAdd(CVar("x"), CVar("x")))
    assert lc_typecheck([], term) == LCArrow(COST_T, COST_T)

def test_recursor_types():
    step = CLam("p", LCProd(LC_NAT_T, COST_T), CAdd(CConst(1), CSnd(CVar("p"))))
    assert lc_typecheck({}, CNatRec(CNum(3), CConst(0), step)) == COST_T
    lst = CCons(CNum(1), CNil(LC_NAT_T))
    lstep = CLam("p", LCProd(LC_NAT_T, LCProd(LCList(LC_NAT_T), COST_T)), CConst(1))
    assert lc_typecheck({}, CListRec(lst, CConst(0), lstep)) == COST_T

def test_case_branches_must_agree():
    scr = CInl(CUnitVal(), LC_UNIT_T)
    assert lc_typecheck({}, CCase(scr, "a", CConst(1), "b", CConst(2))) == COST_T
    with pytest.raises(LCTypeError, match="case branches"):
        lc_typecheck({}, CCase(scr, "a", CConst(1), "b", CNum(2)))

def test_application_and_errors():
    fn = CLam("x", LC_NAT_T, CPair(CConst(0), CVar("x")))
    assert lc_typecheck({}, CApp(fn, CNum(2))) == LCProd(COST_T, LC_NAT_T)
    with pytest.raises(LCTypeError, match="argument"): lc_typecheck({}, CApp(fn, CConst(2)))
    with pytest.raises(LCTypeError, match="unbound"): lc_typecheck({}, CVar("y"))

def test_primitive_types():
    assert lc_typecheck({}, CPrim("leq", (CNum(1), CNum(2)))) == LCSum(LC_UNIT_T, LC_UNIT_T)
    with pytest.raises(LCTypeError): lc_typecheck({}, CPrim("phi", (CNum(1), CNum(2))))
