import random

import pytest

from analysis.errors import TypeCheckError
from analysis.leq import leq_check
from analysis.typecheck import Derivation, TypeChecker
from data_models.credits import CreditTerm
from data_models.la_syntax import App, Num, Pair, Spend, Tick, UnitVal
from harness.fuzz import (
    PROPERTIES, TermGenerator, check_certificates, failure, fuzz_metatheory,
    generate_certificate_instances, observe, shrink,
)

ONE = CreditTerm.constant(1)


def _spend_without_bank(self, ctx, term):
    body = self.derive(ctx, term.body)
    return Derivation("spend", term, body.type, body.resources, (body,))


@pytest.fixture
def lenient_spend(mocker):
    mocker.patch.object(TypeChecker, "_rule_spend", _spend_without_bank)


def test_small_run_has_no_violations():
    report = fuzz_metatheory(count=20, depth=4, seed=3, shrink_budget=20)
    assert report.passed, [v.detail for v in report.violations]
    assert report.generated == 20
    assert report.checks == {name: 20 for name in PROPERTIES}
    assert report.to_dataframe()["violations"].sum() == 0


def test_thousand_term_run_has_no_violations():
    report = fuzz_metatheory(count=1000, depth=6, seed=0)
    assert report.passed, [(v.property, v.shrunk, v.detail) for v in report.violations]
    assert report.generated == 1000
    assert report.checks == {name: 1000 for name in PROPERTIES}


def test_same_seed_same_terms():
    first = TermGenerator(random.Random(8), 5).closed_term()
    assert TermGenerator(random.Random(8), 5).closed_term() == first


def test_generated_values_cost_nothing():
    gen = TermGenerator(random.Random(1), 3)
    checked = 0
    for _ in range(40):
        try:
            obs = observe(gen.leaf(gen.random_type(), []))
        except TypeCheckError:
            continue
        checked += 1
        assert (obs.n, obs.r) == (0, 0)
    assert checked > 0


def test_rejected_and_sound_terms_report_nothing():
    assert failure("preservation", App(UnitVal(), UnitVal())) is None
    assert failure("preservation", Spend(ONE, UnitVal())) is None


def test_lenient_spend_breaks_preservation(lenient_spend):
    detail = failure("preservation", Spend(ONE, UnitVal()))
    assert detail == "a + r = 0 + -1 < 0"


def test_shrink_keeps_the_failing_part(lenient_spend):
    term = Pair(Tick(Num(1)), Spend(ONE, UnitVal()))
    assert shrink(term, "preservation", budget=50) == Spend(ONE, UnitVal())


def test_shrink_leaves_passing_terms_alone():
    term = Pair(Tick(Num(1)), UnitVal())
    assert shrink(term, "preservation", budget=50) == term


def test_fuzzer_catches_lenient_spend(lenient_spend):
    report = fuzz_metatheory(count=60, depth=5, seed=0, shrink_budget=40,
                             properties=("preservation", "bound"))
    assert not report.passed
    assert any("spend" in v.shrunk for v in report.violations)
    assert set(report.violation_frame().columns) == {"property", "term", "shrunk", "detail"}


def test_certificate_instances_validate():
    instances = generate_certificate_instances(8, seed=4)
    assert len(instances) == 8
    for inst in instances:
        assert leq_check(inst.certificate, inst.lhs, inst.rhs, inst.type)


def test_certificate_sampling_report():
    report = check_certificates(10, seed=2, samples=10)
    assert report.passed, [v.detail for v in report.violations]
    assert report.checks == {"leq_soundness": 10}
