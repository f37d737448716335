import pytest

from analysis.interp import evaluate, phi
from analysis.typecheck import EMPTY_CONTEXT, closed_bank
from data_models.credits import ResourceTerm
from data_models.extended import INF
from data_models.la_syntax import Num, Pack, Pair, Save, UnitVal, type_equal
from harness.corpus import (
    BANK_T, PIVOT_T, SIZE_RESULT_T, SPLIT_T, app, corpus_closed_terms, corpus_programs, corpus_spawn,
    nat_input,
)
from harness.splay_check import fresh, from_la, host_split, potential, to_la

NO_BANK = ResourceTerm.of_bank(0)


def _definitions():
    for program in corpus_programs():
        for definition in program.definitions:
            yield program, definition


CORPUS_DEFINITIONS = list(_definitions())


@pytest.mark.parametrize("program,definition", CORPUS_DEFINITIONS,
                         ids=[d.name for _, d in CORPUS_DEFINITIONS])
def test_definitions_check_at_declared_type_with_empty_bank(checker, program, definition):
    checker.check(EMPTY_CONTEXT, NO_BANK, program.expand(definition.name), definition.type)


def test_counter_file_declares_inc_set_and_plain_inc(counter_program):
    assert [d.name for d in counter_program.definitions] == ["inc", "set", "plain_inc"]
    assert counter_program.main is not None


@pytest.mark.parametrize("n", [0, 1, 5])
def test_spawn_creates_n_credits_without_ticking(n):
    spawn = corpus_spawn().expand("spawn")
    outcome = evaluate(app(spawn, nat_input(n)))
    assert (outcome.cost.n, outcome.cost.r) == (0, n)
    value = outcome.value
    assert isinstance(value, Pack)
    assert value.credit.closed_value() == n
    assert value.body == Save(1, value.credit, UnitVal())


def test_spawn_result_type_is_a_bank():
    spawn = corpus_spawn().expand("spawn")
    result, bank = closed_bank(app(spawn, Num(3)))
    assert type_equal(result.type, BANK_T)
    assert bank == 0


def test_promote_saves_the_pivot_for_unlimited_use(splay_program):
    promote = splay_program.expand("promote")
    outcome = evaluate(app(promote, Num(4)))
    assert outcome.value == Save(INF, outcome.value.credit, Num(4))
    assert outcome.value.credit.closed_value() == 0
    assert (outcome.cost.n, outcome.cost.r) == (0, 0)
    result, _ = closed_bank(app(promote, Num(4)))
    assert type_equal(result.type, PIVOT_T)


def _small_tree():
    return fresh(5, fresh(2, None, fresh(3, None, None)), fresh(9, None, None))


def test_size_reads_the_cached_size_and_keeps_the_tree(splay_program):
    size = splay_program.expand("size")
    t = _small_tree()
    term = app(size, to_la(t))
    result, bank = closed_bank(term)
    assert type_equal(result.type, SIZE_RESULT_T)
    assert bank == potential(t)
    outcome = evaluate(term)
    assert isinstance(outcome.value, Pair)
    assert outcome.value.left == Num(4)
    assert from_la(outcome.value.right) == t
    assert (outcome.cost.n, outcome.cost.r) == (0, 0)


def test_split_type_and_bank_equal_tree_potential(split_fn):
    t = _small_tree()
    result, bank = closed_bank(app(split_fn, Pair(Num(4), to_la(t))))
    assert type_equal(result.type, SPLIT_T.res)
    assert bank == potential(t) == phi(4) + phi(2) + 2 * phi(1)


def test_split_matches_the_host_mirror(split_fn):
    t = _small_tree()
    outcome = evaluate(app(split_fn, Pair(Num(4), to_la(t))))
    small, big, n, r = host_split(4, t)
    assert isinstance(outcome.value, Pair)
    assert from_la(outcome.value.left) == small
    assert from_la(outcome.value.right) == big
    assert (outcome.cost.n, outcome.cost.r) == (n, r)


def test_closed_terms_need_only_their_input_credits():
    banks = [closed_bank(term)[1] for term in corpus_closed_terms()]
    # inc on [], [1], [1,1,0], [0,1,1,1]; set 0/1/4; plain_inc; spawn 0/3
    assert banks == [0, 1, 2, 3, 0, 0, 0, 0, 0, 0]
