import pytest

from analysis.errors import FuelExhausted, LCTypeError
from analysis.normalize import lc_normalize, normalize_cost
from data_models.extended import INF
from data_models.lc_syntax import (
    COST_T, LC_NAT_T, CAdd, CApp, CConst, CFst, CLam, CMax, CNatRec, CNeg, CNum, CPair, CPrim,
    CScale, CSnd, CSucc, CUnitVal, CVar, DAdd, DConst, LCProd, ToCost,
)

COUNT_STEP = CLam("p", LCProd(LC_NAT_T, COST_T), CAdd(CConst(1), CSnd(CVar("p"))))


@pytest.mark.parametrize("term, value", [
    (CAdd(CConst(2), CConst(3)), 5),
    (CAdd(CConst(2), CConst(INF)), INF),
    (CScale(INF, CConst(0)), 0),
    (CScale(3, CConst(2)), 6),
    (CMax(CConst(-1), CNeg(CConst(4))), -1),
    (ToCost(DAdd(DConst(1), DConst(2))), 3),
    (CNatRec(CNum(5), CConst(0), COUNT_STEP), 5),
    (CApp(CLam("x", COST_T, CAdd(CVar("x"), CVar("x"))), CConst(4)), 8),
])
def test_normalize_cost(term, value):
    assert normalize_cost(term) == value

def test_normal_forms_are_constructor_headed():
    term = CPair(CAdd(CConst(1), CConst(2)), CSucc(CNum(2)))
    assert lc_normalize(term) == CPair(CConst(3), CNum(3))
    assert lc_normalize(CPrim("phi", (CNum(7),))) == CNum(3)

def test_lambda_reads_back_with_environment():
    fn = CApp(CLam("k", COST_T, CLam("x", COST_T, CAdd(CVar("k"), CVar("x")))), CConst(2))
    out = lc_normalize(fn)
    assert isinstance(out, CLam)
    assert normalize_cost(CApp(out, CConst(5))) == 7

def test_unused_components_are_never_forced():
    # the second component is ill-typed and stuck, but never demanded
    term = CFst(CPair(CConst(1), CFst(CUnitVal())))
    assert lc_normalize(term, check=False) == CConst(1)

def test_non_cost_result_rejected():
    with pytest.raises(LCTypeError): normalize_cost(CNum(3))

def test_ill_typed_term_rejected():
    with pytest.raises(LCTypeError): lc_normalize(CAdd(CConst(1), CNum(1)))

def test_fuel():
    with pytest.raises(FuelExhausted):
        normalize_cost(CNatRec(CNum(10 ** 6), CConst(0), COUNT_STEP), fuel=1_000)
