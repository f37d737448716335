import pytest

from analysis.errors import BoundViolation, InsufficientResources
from analysis.interp import evaluate
from data_models.extended import INF
from data_models.la_syntax import (
    BIT_T, NAT_T, UNIT_T, App, Num, Pair, TBang, TList, TLolli, TSum, TTensor,
    UnitVal, bit_list, one_bit, zero_bit,
)
from data_models.lc_syntax import CNum, CPair, DConst
from data_models.reports import TraceRecord
from harness.bounds import (
    check_bound, describe_input, enumerate_inputs, finite_values, is_first_order, parse_input_spec,
    value_bounded, verify,
)
from harness.corpus import app, bits_input, corpus_closed_terms, nat_input


@pytest.fixture(scope="module")
def inc(counter_program):
    return counter_program.expand("inc")


@pytest.mark.parametrize("term", list(corpus_closed_terms()))
def test_corpus_runs_fit_their_bounds(term):
    record = check_bound(term)
    assert record.verdict == "pass", record.detail


def test_increment_record(inc):
    record = check_bound(app(inc, bits_input([1, 1, 0])), program="inc", input_label="[1,1,0]", size=3)
    assert (record.n, record.r, record.amortized) == (3, -1, 2)
    assert record.bound == 2
    assert record.bank == 2
    assert record.value_bounded is True
    assert record.verdict == "pass"
    assert record.detail == ""


@pytest.mark.parametrize("n", [0, 1, 4, 9])
def test_set_ticks_stay_under_twice_n(counter_program, n):
    record = check_bound(app(counter_program.expand("set"), nat_input(n)))
    assert record.bank == 0
    assert record.r >= 0
    assert record.n <= record.bound == 2 * n


def test_bank_smaller_than_required_is_rejected(inc):
    with pytest.raises(InsufficientResources) as excinfo:
        check_bound(app(inc, bits_input([1, 1])), bank=1)
    assert excinfo.value.required == 2
    assert excinfo.value.deficit == 1


def test_larger_bank_is_accepted(inc):
    record = check_bound(app(inc, bits_input([1])), bank=INF)
    assert record.bank == "inf"
    assert record.verdict == "pass"


def test_lowered_bound_fails_and_strict_raises_with_trace(inc, mocker):
    mocker.patch("harness.bounds.normalize_cost", return_value=0)
    term = app(inc, bits_input([1, 1, 0]))
    record = check_bound(term)
    assert record.verdict == "fail"
    assert "exceeds" in record.detail

    with pytest.raises(BoundViolation) as excinfo:
        check_bound(term, strict=True)
    assert excinfo.value.record.verdict == "fail"
    assert excinfo.value.trace
    assert all(isinstance(t, TraceRecord) for t in excinfo.value.trace)
    assert sum(t.dn for t in excinfo.value.trace) == 3


def test_first_order_types():
    assert is_first_order(TList(BIT_T))
    assert is_first_order(TTensor(NAT_T, TBang(INF, BIT_T.right.credit, NAT_T)))
    assert not is_first_order(TLolli(NAT_T, NAT_T))


def test_value_bounded_on_naturals_and_pairs():
    ty = TTensor(NAT_T, NAT_T)
    assert value_bounded(Pair(Num(2), Num(3)), CPair(CNum(2), CNum(5)), ty)
    assert not value_bounded(Pair(Num(2), Num(3)), CPair(CNum(2), CNum(1)), ty)
    assert value_bounded(Num(7), CNum(INF), NAT_T)
    assert not value_bounded(Num(7), DConst(7), NAT_T)


def test_finite_values_of_bits():
    assert finite_values(BIT_T) == [zero_bit(), one_bit()]
    assert len(finite_values(TTensor(BIT_T, TSum(UNIT_T, UNIT_T)))) == 4
    with pytest.raises(ValueError):
        finite_values(NAT_T)


def test_enumerate_inputs():
    nats = list(enumerate_inputs(NAT_T, 3))
    assert nats == [(Num(0), 0), (Num(1), 1), (Num(2), 2), (Num(3), 3)]
    lists = list(enumerate_inputs(TList(BIT_T), 2))
    assert [size for _, size in lists] == [0, 1, 1, 2, 2, 2, 2]
    assert lists[-1][0] == bit_list([1, 1])
    with pytest.raises(ValueError):
        list(enumerate_inputs(UNIT_T, 2))


def test_describe_input():
    assert describe_input(bit_list([1, 0])) == "[1,0]"
    assert describe_input(bit_list([])) == "[]"
    assert describe_input(Num(12)) == "12"
    assert describe_input(UnitVal()) == "unit"


def test_parse_input_spec():
    assert parse_input_spec("inc:8, set:64") == [("inc", 8), ("set", 64)]
    for bad in ["inc", "inc:x", ":4", "", " , "]:
        with pytest.raises(ValueError):
            parse_input_spec(bad)


def test_verify_counter(counter_program):
    report = verify(counter_program, [("inc", 3), ("set", 4), ("plain_inc", 2)], name="counter")
    assert report.passed
    assert len(report.records) == 15 + 5 + 7
    summary = report.summary()
    assert list(summary.columns) == ["size", "max_n", "max_amortized", "bound", "all_pass"]
    assert summary["all_pass"].all()
    assert list(report.record_frame().columns) == ["size", "n", "r", "bound", "verdict"]


def test_plain_increment_ticks_at_most_length_plus_one(counter_program):
    report = verify(counter_program, [("plain_inc", 8)])
    assert all(rec.n <= rec.size + 1 for rec in report.records)
    assert max(rec.n for rec in report.records) == 9


def test_verify_rejects_unknown_definition(counter_program):
    with pytest.raises(KeyError):
        verify(counter_program, [("missing", 2)])


def test_increments_telescope_into_set(counter_program, inc):
    # per-call amortized costs of k increments from zero sum to set k's n + r
    for k in range(0, 10):
        total, bits = 0, bits_input([])
        for _ in range(k):
            outcome = evaluate(App(inc, bits))
            total += outcome.cost.amortized
            bits = outcome.value
        whole = evaluate(app(counter_program.expand("set"), nat_input(k)))
        assert total == whole.cost.amortized
        assert whole.cost.r >= 0
