import random

import pytest
from hypothesis import given, settings, strategies as st

from analysis.errors import (
    IllFormedCredit, InsufficientResources, NonPositiveMultiplicity, TypeCheckError, TypeMismatch,
    UnboundVariable,
)
from analysis.typecheck import EMPTY_CONTEXT, TypingContext, check, closed_bank, synthesize
from data_models.credits import CreditTerm, ResourceTerm, ZERO_RESOURCES, resource_subst
from data_models.extended import INF
from data_models.la_syntax import (
    BIT_T, NAT_T, UNIT_T, App, Case, Create, Lam, LetPair, Num, Pack, Pair, Prim, Save, Spend, TBang,
    TExists, TList, TLolli, TSum, TTensor, Tick, Transfer, UnitVal, Unpack, Var, bit_list, credit_subst,
    subst,
)
from harness.fuzz import CREDITS, TermGenerator

BITS_T = TList(BIT_T)
SAVED_UNIT = TBang(1, CreditTerm.constant(1), UNIT_T)
SOME_CREDIT = TExists("a", TBang(1, CreditTerm.var("a"), NAT_T))


def test_unbound_variable():
    with pytest.raises(UnboundVariable): synthesize(EMPTY_CONTEXT, Var("x"))

def test_affine_lambda_rejects_duplication():
    with pytest.raises(InsufficientResources):
        synthesize(EMPTY_CONTEXT, Lam("x", NAT_T, Pair(Var("x"), Var("x"))))

def test_letpair_scales_its_scrutinee():
    ctx = TypingContext.of(("p", TTensor(NAT_T, NAT_T)))
    term = LetPair("a", "b", Var("p"), Pair(Var("a"), Var("a")), mult=2)
    result = synthesize(ctx, term)
    assert result.type == TTensor(NAT_T, NAT_T)
    assert result.resources == ResourceTerm.make({"p": 2})

def test_case_joins_branches():
    ctx = TypingContext.of(("b", TSum(UNIT_T, UNIT_T)))
    term = Case(Var("b"), "u", Spend(CreditTerm.constant(2), Var("u")), "v", Spend(CreditTerm.constant(1), Var("v")))
    assert synthesize(ctx, term).resources == ResourceTerm.make({"b": 1}, 2)

def test_credit_rules_move_the_bank():
    assert synthesize(EMPTY_CONTEXT, Spend(CreditTerm.constant(3), UnitVal())).resources == ResourceTerm.make({}, 3)
    inner = Create(CreditTerm.constant(2), Spend(CreditTerm.constant(3), UnitVal()))
    assert synthesize(EMPTY_CONTEXT, inner).resources == ResourceTerm.make({}, 1)
    assert synthesize(EMPTY_CONTEXT, Create(CreditTerm.constant(5), UnitVal())).resources == ZERO_RESOURCES

def test_save_scales_body_and_adds_credit():
    ctx = TypingContext.of(("y", NAT_T))
    result = synthesize(ctx, Save(2, CreditTerm.constant(1), Var("y")))
    assert result.type == TBang(2, CreditTerm.constant(1), NAT_T)
    assert result.resources == ResourceTerm.make({"y": 2}, 1)
    closed = Save(INF, CreditTerm(), Lam("x", NAT_T, Tick(Var("x"))))
    assert synthesize(EMPTY_CONTEXT, closed).resources == ZERO_RESOURCES

def test_transfer_pays_out_saved_credit():
    ctx = TypingContext.of(("s", SAVED_UNIT))
    term = Transfer("u", Var("s"), Spend(CreditTerm.constant(1), Var("u")))
    assert synthesize(ctx, term).resources == ResourceTerm.make({"s": 1})

def test_tick_is_free():
    assert synthesize(EMPTY_CONTEXT, Tick(Num(1))).resources == ZERO_RESOURCES

def test_pack_checks_instantiated_body():
    good = Pack(CreditTerm.constant(2), SOME_CREDIT, Save(1, CreditTerm.constant(2), Num(0)))
    assert synthesize(EMPTY_CONTEXT, good).resources == ResourceTerm.make({}, 2)
    bad = Pack(CreditTerm.constant(2), SOME_CREDIT, Save(1, CreditTerm.constant(1), Num(0)))
    with pytest.raises(TypeMismatch): synthesize(EMPTY_CONTEXT, bad)

def test_unpacked_variable_cannot_escape():
    ctx = TypingContext.of(("p", SOME_CREDIT))
    with pytest.raises(IllFormedCredit, match="escapes"):
        synthesize(ctx, Unpack("a", "x", Var("p"), Var("x")))
    result = synthesize(ctx, Unpack("a", "x", Var("p"), Transfer("v", Var("x"), Spend(CreditTerm.var("a"), Var("v")))))
    assert result.type == NAT_T and result.resources == ResourceTerm.make({"p": 1})

def test_save_multiplicity_must_be_positive():
    with pytest.raises(NonPositiveMultiplicity): synthesize(EMPTY_CONTEXT, Save(0, CreditTerm(), UnitVal()))

def test_credit_variable_out_of_scope():
    with pytest.raises(IllFormedCredit): synthesize(EMPTY_CONTEXT, Spend(CreditTerm.var("a"), UnitVal()))

def test_prim_types():
    assert synthesize(EMPTY_CONTEXT, Prim("leq", (Num(1), Num(2)))).type == TSum(UNIT_T, UNIT_T)
    assert synthesize(EMPTY_CONTEXT, Prim("dup", (Num(1),))).type == TTensor(NAT_T, NAT_T)
    with pytest.raises(TypeMismatch): synthesize(EMPTY_CONTEXT, Prim("phi", (UnitVal(),)))

def test_check_weakens_and_rejects(counter_program):
    inc = counter_program.expand("inc")
    d = check(EMPTY_CONTEXT, ZERO_RESOURCES, inc, TLolli(BITS_T, BITS_T))
    assert d.rule == "lam"
    with pytest.raises(TypeMismatch): check(EMPTY_CONTEXT, ZERO_RESOURCES, inc, TLolli(NAT_T, BITS_T))
    spend = Spend(CreditTerm.constant(2), UnitVal())
    check(EMPTY_CONTEXT, ResourceTerm.make({}, 5), spend, UNIT_T)
    with pytest.raises(InsufficientResources) as exc:
        check(EMPTY_CONTEXT, ResourceTerm.make({}, 1), spend, UNIT_T)
    assert exc.value.deficit == ResourceTerm.make({}, 1)

def test_corpus_definitions_need_no_bank(counter_program):
    for name in counter_program.names:
        assert closed_bank(counter_program.expand(name))[1] == 0

@settings(max_examples=30, deadline=None)
@given(st.lists(st.booleans(), max_size=8))
def test_increment_needs_one_credit_per_set_bit(counter_program, bits):
    _, bank = closed_bank(App(counter_program.expand("inc"), bit_list(bits)))
    assert bank == sum(bits)


class OpenCreditGenerator(TermGenerator):
    """Generated credits sometimes mention the free credit variable ``k``."""

    def credit(self) -> CreditTerm:
        if self.rng.random() < 0.4:
            return CreditTerm.make({"k": self.rng.choice((1, 2))}, self.rng.choice(CREDITS))
        return super().credit()


def _well_typed(attempts, build):
    for _ in range(attempts):
        try:
            return build()
        except TypeCheckError:
            continue
    return None


def _open_term(gen):
    arg_ty = gen.random_type(1)
    body = gen.term(gen.random_type(1), gen.max_depth, [("x", arg_ty)])
    arg = gen.term(arg_ty, gen.max_depth, [])
    return body, synthesize(TypingContext.of(("x", arg_ty)), body), arg, synthesize(EMPTY_CONTEXT, arg)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 16))
def test_substitution_checks_at_substituted_resources(seed):
    gen = TermGenerator(random.Random(seed), max_depth=3)
    instance = _well_typed(40, lambda: _open_term(gen))
    if instance is None:
        return
    body, g, arg, f = instance
    check(EMPTY_CONTEXT, resource_subst(g.resources, "x", f.resources), subst(body, "x", arg), g.type)


K_SCOPE = TypingContext.of(credit_vars=("k",))
J_SCOPE = TypingContext.of(credit_vars=("j",))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 16),
       st.sampled_from([CreditTerm.constant(0), CreditTerm.constant(3), CreditTerm.make({"j": 2}, 1)]))
def test_credit_instance_checks_at_instantiated_resources(seed, c):
    gen = OpenCreditGenerator(random.Random(seed), max_depth=3)

    def build():
        term = gen.term(gen.random_type(1), gen.max_depth, [])
        return term, synthesize(K_SCOPE, term)

    instance = _well_typed(40, build)
    if instance is None:
        return
    term, result = instance
    check(J_SCOPE, result.resources.credit_subst("k", c), credit_subst(term, "k", c),
          credit_subst(result.type, "k", c))


def test_credit_instance_of_a_saved_credit():
    term = Save(1, CreditTerm.make({"k": 2}, 1), UnitVal())
    result = synthesize(K_SCOPE, term)
    assert result.resources == ResourceTerm.make({}, CreditTerm.make({"k": 2}, 1))
    d = check(EMPTY_CONTEXT, result.resources.credit_subst("k", CreditTerm.constant(3)),
              credit_subst(term, "k", CreditTerm.constant(3)), TBang(1, CreditTerm.constant(7), UNIT_T))
    assert d.rule == "save"
