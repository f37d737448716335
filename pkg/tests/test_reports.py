import pytest
from pydantic import ValidationError

from data_models.reports import (
    BoundRecord, BoundReport, CostPair, FuzzReport, FuzzViolation, SampledVerdict, SequenceResult,
    SolveRow, SolveTable, SplayRecord, SplayReport, TraceRecord,
)


def _record(size, n, r, bound, verdict="pass", program="inc"):
    return BoundRecord(program=program, size=size, n=n, r=r, amortized=n + r, bound=bound, verdict=verdict)


def test_cost_pair():
    assert CostPair(n=3, r=-1).amortized == 2
    with pytest.raises(ValidationError):
        CostPair(n=-1, r=0)


def test_trace_record_text():
    assert str(TraceRecord(rule="spend", dn=0, dr=-1)) == "spend 0 -1"


def test_bound_report_summary_groups_by_size():
    report = BoundReport(records=[
        _record(0, 1, 1, 2), _record(1, 2, 0, 2), _record(1, 1, 1, 2),
        _record(2, 3, -1, "inf"), _record(2, 1, 1, 2, verdict="fail"),
    ])
    assert not report.passed
    assert len(report.failures) == 1
    summary = report.summary().set_index("size")
    assert summary.loc[1, "max_n"] == 2
    assert summary.loc[1, "max_amortized"] == 2
    assert bool(summary.loc[1, "all_pass"])
    assert not bool(summary.loc[2, "all_pass"])
    assert summary.loc[2, "bound"] == 2


def test_empty_reports_keep_their_columns():
    assert list(BoundReport().summary().columns) == ["size", "max_n", "max_amortized", "bound", "all_pass"]
    assert "verdict" in BoundReport().to_dataframe().columns
    assert BoundReport().passed
    assert list(SolveTable().wide().columns) == ["size"]
    assert list(FuzzReport(seed=0).to_dataframe().columns) == ["property", "checked", "violations"]


def test_record_frame_is_csv_ready():
    report = BoundReport(records=[_record(3, 3, -1, 2)])
    assert report.record_frame().to_csv(index=False).splitlines() == ["size,n,r,bound,verdict", "3,3,-1,2,pass"]


def test_splay_report_verdict():
    rec = SplayRecord(trial=0, size=1, pivot=0, n=1, r=0, amortized=1, bound=3, extracted_cost=3,
                      input_potential=1, output_potential=1, invariants_ok=True, verdict="pass")
    report = SplayReport(records=[rec], okasaki_cases=30)
    assert report.passed
    report.sequence = SequenceResult(operations=2, total_ticks=9, plain_bound=6, accounted_bound=8,
                                     verdict="fail")
    assert not report.passed
    report.sequence = None
    report.okasaki_failures.append("zig-zig: 9 > 7")
    assert not report.passed


def test_fuzz_report_counts():
    report = FuzzReport(seed=1)
    for prop in ["bound", "erasure", "bound"]:
        report.count(prop)
    report.violations.append(FuzzViolation(property="bound", term="(tick unit)", detail="n=1 exceeds"))
    df = report.to_dataframe()
    assert df.to_dict("records") == [
        {"property": "bound", "checked": 2, "violations": 1},
        {"property": "erasure", "checked": 1, "violations": 0},
    ]
    assert not report.passed


def test_sampled_verdict_truthiness():
    assert SampledVerdict(passed=True, checked=5)
    assert not SampledVerdict(passed=False, checked=1, counterexample="2 > 1")


def test_verdict_literal_is_enforced():
    with pytest.raises(ValidationError):
        _record(0, 0, 0, 0, verdict="maybe")


def test_solve_table_wide():
    table = SolveTable(rows=[SolveRow(function="set", size=n, cost=2 * n) for n in range(3)]
                       + [SolveRow(function="inc", size=n, cost=2) for n in range(3)])
    wide = table.wide()
    assert list(wide.columns) == ["size", "inc", "set"]
    assert wide["set"].tolist() == [0, 2, 4]


def test_summary_keeps_tightest_bound():
    report = BoundReport(records=[_record(4, 1, 1, "inf"), _record(4, 2, 0, 5), _record(4, 1, 0, 3),
                                  _record(5, 1, 0, "inf")])
    summary = report.summary().set_index("size")
    assert summary.loc[4, "bound"] == 3
    assert summary.loc[5, "bound"] == float("inf")
