import pytest

from analysis.fusion import LAW_BANG, LAW_SUM, LAW_TENSOR, fusion_witnesses
from analysis.interp import run
from analysis.typecheck import EMPTY_CONTEXT, check
from data_models.credits import CreditTerm, ZERO_RESOURCES
from data_models.la_syntax import App, Num, Save

WITNESSES = fusion_witnesses()


def test_every_law_has_both_directions():
    laws = {(w.law, w.direction) for w in WITNESSES}
    assert laws == {(law, d) for law in (LAW_BANG, LAW_TENSOR, LAW_SUM) for d in ("split", "join")}
    assert len(WITNESSES) == 18

@pytest.mark.parametrize("witness", WITNESSES, ids=lambda w: f"{w.law}-{w.direction}-{w.params}")
def test_witness_is_closed_and_free(witness):
    assert witness.term.free_vars == frozenset()
    check(EMPTY_CONTEXT, ZERO_RESOURCES, witness.term, witness.type)

def test_split_then_join_is_identity_on_values():
    split, join = [w for w in WITNESSES if w.law == LAW_BANG][:2]
    k1, k2, l1, l2 = split.params
    value = Save(k1 * k2, CreditTerm.constant(l1 + k1 * l2), Num(7))
    out, n, _ = run(App(join.term, App(split.term, value)))
    assert out == value and n == 0
