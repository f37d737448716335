import pytest

from analysis.errors import MalformedCertificate
from analysis.extract import extract
from analysis.leq import (
    LeqCertificate, beta_simplify, certificate_rules, cong, contract, leq_check, refl, trans,
)
from analysis.normalize import normalize_cost
from data_models.la_syntax import App, bit_list
from data_models.lc_syntax import (
    COST_T, LC_NAT_T, CAdd, CApp, CConst, CFst, CLam, CMax, CNatRec, CNum, CPair, CSnd, CUnitVal, CVar,
    LCProd,
)


def test_contract_head_redexes():
    assert contract(CFst(CPair(CConst(1), CUnitVal()))) == CConst(1)
    assert contract(CApp(CLam("x", COST_T, CVar("x")), CConst(2))) == CConst(2)
    assert contract(CNatRec(CNum(0), CConst(0), CVar("s"))) == CConst(0)
    assert contract(CAdd(CConst(1), CConst(2))) is None

def test_simplify_projection_and_arith():
    original = CAdd(CFst(CPair(CConst(1), CUnitVal())), CConst(2))
    simplified, cert = beta_simplify(original)
    assert simplified == CConst(3)
    assert leq_check(cert, simplified, original, COST_T)
    assert {"beta", "arith", "cong", "trans"} <= set(certificate_rules(cert))

def test_simplify_under_binder():
    original = CLam("y", COST_T, CAdd(CVar("y"), CSnd(CPair(CUnitVal(), CConst(0)))))
    simplified, cert = beta_simplify(original)
    assert simplified == CLam("y", COST_T, CAdd(CVar("y"), CConst(0)))
    assert leq_check(cert, simplified, original)

def test_nothing_to_simplify_is_reflexive():
    e = CVar("x")
    simplified, cert = beta_simplify(e)
    assert simplified == e and cert.rule == "refl"

def test_wrong_conclusion_is_false():
    cert = refl(CConst(1))
    assert leq_check(cert, CConst(1), CConst(1))
    assert not leq_check(cert, CConst(1), CConst(2))

def test_type_mismatch_is_false():
    assert not leq_check(refl(CNum(1)), CNum(1), CNum(1), COST_T)

@pytest.mark.parametrize("cert", [
    LeqCertificate("refl", CConst(1), CConst(2)),
    LeqCertificate("arith", CConst(3), CConst(2)),
    LeqCertificate("beta", CConst(1), CFst(CPair(CConst(2), CUnitVal()))),
    LeqCertificate("max_left", CConst(2), CMax(CConst(1), CConst(2))),
    LeqCertificate("magic", CConst(1), CConst(1)),
    cong("arg", CApp(CVar("f"), CConst(1)), CApp(CVar("f"), CConst(2)),
         LeqCertificate("arith", CConst(1), CConst(2))),
    trans(refl(CConst(1)), refl(CConst(2))),
])
def test_malformed_certificates(cert):
    with pytest.raises(MalformedCertificate):
        leq_check(cert, cert.lhs, cert.rhs)

def test_valid_rule_instances():
    assert leq_check(LeqCertificate("max_right", CConst(2), CMax(CConst(1), CConst(2))),
                     CConst(2), CMax(CConst(1), CConst(2)))
    bigger = CAdd(CVar("x"), CConst(2))
    smaller = CAdd(CVar("x"), CConst(1))
    cert = cong("right", smaller, bigger, LeqCertificate("arith", CConst(1), CConst(2)))
    assert leq_check(cert, smaller, bigger, COST_T, {"x": COST_T})
    lub = LeqCertificate("max_lub", CMax(CConst(1), CConst(2)), CConst(2), (
        LeqCertificate("arith", CConst(1), CConst(2)), refl(CConst(2))))
    assert leq_check(lub, lub.lhs, lub.rhs)

def test_simplified_extraction_keeps_its_cost(counter_program):
    term = App(counter_program.expand("inc"), bit_list([1, 0, 1]))
    complexity = extract(term)
    simplified, cert = beta_simplify(complexity.term)
    assert leq_check(cert, simplified, complexity.term, complexity.type)
    assert normalize_cost(CFst(simplified)) == normalize_cost(complexity.cost)

def test_simplified_definitions_are_certified(counter_program):
    for name in counter_program.names:
        complexity = extract(counter_program.expand(name))
        simplified, cert = beta_simplify(complexity.term)
        assert leq_check(cert, simplified, complexity.term, complexity.type)
