import pytest

from analysis.errors import ParseError
from data_models.credits import CreditTerm
from data_models.extended import INF
from data_models.la_syntax import (
    BIT_T, NAT_T, App, Case, Num, Save, TBang, TExists, TList, TLolli, TTensor, TWith, Var, one_bit,
)
from utils.la_parser import load_program, parse_credit, parse_program, parse_term, parse_type, read_sexprs


@pytest.mark.parametrize("text, expected", [
    ("2*a+b+1", CreditTerm.make({"a": 2, "b": 1}, 1)),
    ("inf", CreditTerm.constant(INF)),
    ("a+a", CreditTerm.make({"a": 2})),
    ("0", CreditTerm()),
])
def test_parse_credit(text, expected):
    assert parse_credit(text) == expected

@pytest.mark.parametrize("bad", ["", "2*", "a-b", "2*nat"])
def test_parse_credit_rejects(bad):
    with pytest.raises(ParseError): parse_credit(bad)

def test_parse_types():
    assert parse_type("(-o nat nat nat)") == TLolli(NAT_T, TLolli(NAT_T, NAT_T))
    assert parse_type("(list bit)") == TList(BIT_T)
    assert parse_type("(![inf,2*a] (* nat nat))") == TBang(INF, CreditTerm.make({"a": 2}), TTensor(NAT_T, NAT_T))
    assert parse_type("(exists a (![1,a] nat))") == TExists("a", TBang(1, CreditTerm.var("a"), NAT_T))
    assert parse_type("(& nat bit)") == TWith(NAT_T, BIT_T)

def test_parse_terms():
    assert parse_term("(app f 1 2)") == App(App(Var("f"), Num(1)), Num(2))
    assert parse_term("1b") == one_bit()
    assert parse_term("(save[inf,0] 3)") == Save(INF, CreditTerm(), Num(3))
    case = parse_term("(case[2] b (x x) (y 0))")
    assert isinstance(case, Case) and case.mult == 2 and case.right == Num(0)

@pytest.mark.parametrize("text, message", [
    ("(app f", "unclosed"),
    ("(app f))", "unexpected ')'"),
    ("(tick[2] 1)", "takes no annotation"),
    ("(save 1)", "needs an annotation"),
    ("(bogus 1)", "unknown form"),
    ("(pair 1)", "expected (pair M N)"),
    ("(lam nat nat 1)", "identifier"),
])
def test_parse_errors(text, message):
    with pytest.raises(ParseError, match=message.replace("(", r"\(").replace(")", r"\)")):
        parse_term(text)

def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse_term("(pair 1\n  (bogus 2))")
    assert (exc.value.line, exc.value.column) == (2, 3)

def test_parse_program_defs_and_main():
    program = parse_program("""
        # comment
        (def three [2] nat 3)
        (def f (-o nat nat) (lam x nat x))
        (main (app f three))
    """)
    assert program.names == ["three", "f"]
    assert program.get("three").bank == CreditTerm.constant(2)
    assert program.expand_main() == App(program.get("f").term, Num(3))

def test_bare_term_is_main():
    assert parse_program("(succ 1)").main is not None

def test_two_mains_rejected():
    with pytest.raises(ParseError, match="more than one main"):
        parse_program("1 2")

def test_duplicate_definition_rejected():
    with pytest.raises(ParseError, match="duplicate"):
        parse_program("(def a nat 1) (def a nat 2)")

def test_read_sexprs_glues_annotations():
    (form,) = read_sexprs("(save[1, 0] x)")
    assert form.items[0].text == "save[1,0]"

def test_load_counter(project_root_dir):
    program = load_program(project_root_dir / "programs" / "counter.la")
    assert program.names == ["inc", "set", "plain_inc"]
    assert program.get("inc").type == TLolli(TList(BIT_T), TList(BIT_T))
