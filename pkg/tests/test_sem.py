import random

import pytest
from hypothesis import given, settings, strategies as st

from analysis.errors import SemanticError
from analysis.extract import extract
from analysis.sem import (
    ClosureV, PairV, SumV, check_leq_sampled, check_monotone_sampled, cost_table, join, make_pair,
    make_sum, ordered_pairs, sample_values, scase, second, sem_eval, sem_leq, slrec, snrec, successor,
)
from data_models.extended import INF
from data_models.lc_syntax import (
    COST_T, LC_NAT_T, CAdd, CApp, CCase, CConst, CEmp, CFst, CInl, CLam, CMax, CNatRec, CNum, CPair,
    CScale, CSnd, CSucc, CVar, LCArrow, LCProd, LCTree, lc_subst,
)

nat_or_top = st.one_of(st.integers(min_value=0, max_value=100), st.just(INF))

COUNT_STEP = CLam("p", LCProd(LC_NAT_T, LC_NAT_T), CSucc(CSnd(CVar("p"))))


def _size_terms(children):
    return st.one_of(
        st.tuples(children, children).map(lambda t: CAdd(*t)),
        st.tuples(children, children).map(lambda t: CMax(*t)),
        children.map(CSucc),
        children.map(lambda e: CScale(2, e)),
        st.tuples(children, children).map(lambda t: CFst(CPair(*t))),
        st.tuples(children, children).map(lambda t: CSnd(CPair(*t))),
        # binds y, so substituting a term that mentions y must rename
        st.tuples(children, children).map(lambda t: CApp(CLam("y", LC_NAT_T, t[0]), t[1])),
        st.tuples(children, children, children).map(
            lambda t: CCase(CInl(t[0], LC_NAT_T), "y", t[1], "z", t[2])),
        st.tuples(st.integers(0, 3), children).map(lambda t: CNatRec(CNum(t[0]), t[1], COUNT_STEP)),
    )


size_terms = st.recursive(
    st.one_of(st.sampled_from([CVar("x"), CVar("y")]), st.integers(0, 5).map(CNum),
              st.integers(0, 5).map(CConst)),
    _size_terms, max_leaves=12)


def test_top_absorbs_constructors():
    assert make_pair(INF, INF) is INF and make_pair(1, INF) == PairV(1, INF)
    assert make_sum(True, INF) is INF

def test_join_of_different_injections_is_top():
    assert join(SumV(True, 1), SumV(False, 1)) is INF
    assert join(SumV(True, 1), SumV(True, 4)) == SumV(True, 4)
    assert join(PairV(1, 5), PairV(3, 2)) == PairV(3, 5)

def test_case_maxes_with_the_other_branch_at_top():
    f, g = (lambda a: a), (lambda b: 0)
    assert scase(f, g, SumV(False, 3)) is INF
    assert scase(g, lambda b: b, SumV(True, 3)) is INF
    assert scase(lambda a: 1, lambda b: 2, SumV(True, 0)) == 2
    assert scase(lambda a: 1, lambda b: 2, INF) == 2

def test_recursors_iterate_and_stop_at_top():
    count = lambda p: successor(second(p))
    assert snrec(0, count, 5) == 5 and snrec(0, count, INF) is INF
    assert slrec(0, lambda p: successor(second(second(p))), 3) == 3
    assert slrec(0, lambda p: 0, INF) is INF

@given(nat_or_top, nat_or_top)
def test_join_is_least_upper_bound_on_naturals(a, b):
    j = join(a, b)
    assert sem_leq(a, j) and sem_leq(b, j)
    assert j == a or j == b

def test_closures_compare_on_probes():
    ident, succ = ClosureV(lambda x: x, "id"), ClosureV(successor, "succ")
    assert sem_leq(ident, succ) and not sem_leq(succ, ident)
    assert join(ident, succ)(3) == 4

def test_trees_have_no_size_model():
    with pytest.raises(SemanticError): sem_eval({}, CEmp(LC_NAT_T))
    with pytest.raises(SemanticError): sample_values(LCTree(LC_NAT_T), random.Random(0))

def test_sampled_leq():
    ctx = {"x": COST_T}
    assert check_leq_sampled(ctx, CVar("x"), CAdd(CVar("x"), CConst(1))).passed
    verdict = check_leq_sampled(ctx, CAdd(CVar("x"), CConst(1)), CVar("x"))
    assert not verdict.passed and "x=" in verdict.counterexample

def test_sample_values_include_boundaries():
    rng = random.Random(0)
    assert {0, INF} <= set(sample_values(LC_NAT_T, rng))
    assert INF in sample_values(LCProd(LC_NAT_T, COST_T), rng)
    arrows = sample_values(LCArrow(LC_NAT_T, LC_NAT_T), rng)
    assert {f.label for f in arrows} >= {"id", "succ"}

def test_monotonicity_sampling():
    assert check_monotone_sampled(successor, ordered_pairs([0, 1, 2, INF])).passed
    flip = lambda x: 0 if x is INF else 10 - x
    assert not check_monotone_sampled(flip, ordered_pairs([0, 1, 2, INF])).passed

def test_counter_costs_in_the_size_model(counter_program):
    inc = second(sem_eval({}, extract(counter_program.expand("inc")).term))
    set_ = second(sem_eval({}, extract(counter_program.expand("set")).term))
    assert cost_table(inc, range(4)) == [(0, 2), (1, 2), (2, 2), (3, 2)]
    assert cost_table(set_, range(5)) == [(n, 2 * n) for n in range(5)]

def test_numbers_evaluate_to_themselves():
    assert sem_eval({}, CNum(4)) == 4 and sem_eval({"k": 3}, CAdd(CVar("k"), CConst(INF))) is INF

@settings(max_examples=200, deadline=None)
@given(size_terms, size_terms, nat_or_top, nat_or_top)
def test_substitution_agrees_with_extended_environment(body, arg, x, y):
    env = {"x": x, "y": y}
    direct = sem_eval(env, lc_subst(body, "x", arg))
    assert direct == sem_eval({**env, "x": sem_eval(env, arg)}, body)
