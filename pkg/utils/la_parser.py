# utils/la_parser.py
"""Reader for the parenthesized prefix syntax of ``.la`` program files.

Reading happens in two passes: a regex tokenizer builds an s-expression tree
that remembers line and column of every node, then :class:`LAParser` turns
the tree into types, terms and a :class:`ProgramFile`. Annotations are
written in square brackets glued to the keyword (``save[1,0]``,
``case[2]``); credit terms inside them look like ``2*a+b+1``.
"""
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple, Union

from analysis.errors import ParseError
from data_models.credits import CreditTerm
from data_models.extended import INF, ExtNat, check_nat
from data_models.la_syntax import (
    BIT_T, NAT_T, UNIT_T, App, Case, Cons, Create, Emp, Fst, Inl, Inr, LATerm, LAType, Lam,
    LetPair, ListRec, NatRec, Nil, Node, Num, Pack, Pair, Prim, Save, Snd, Spend, Succ, TBang,
    TExists, TList, TLolli, TSum, TTensor, TTree, TWith, Tick, Transfer, TreeRec, UnitVal,
    Unpack, Var, WithPair, one_bit, zero_bit,
)
from data_models.program import Definition, ProgramFile

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<comment>#[^\n]*)|(?P<open>\()|(?P<close>\))"
    r"|(?P<atom>[^\s()#\[\]]*(?:\[[^\]\n]*\][^\s()#\[\]]*)*)"
)
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
_INT_RE = re.compile(r"[0-9]+\Z")

RESERVED = frozenset({"unit", "nat", "bit", "inf", "0b", "1b"})
ANNOTATED = frozenset({"letp", "case", "create", "spend", "save", "transfer", "pack"})


# ---------------------------------------------------------------------------
# s-expressions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class SList:
    items: Tuple["SExpr", ...]
    line: int
    column: int


SExpr = Union[Atom, SList]


def _position(text: str, pos: int) -> Tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def read_sexprs(text: str) -> List[SExpr]:
    """Tokenize ``text`` and return its top-level s-expressions."""
    stack: List[Tuple[List[SExpr], int, int]] = [([], 1, 1)]
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        line, column = _position(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column)
        pos = m.end()
        if m.group("ws") or m.group("comment"):
            continue
        if m.group("open"):
            stack.append(([], line, column))
        elif m.group("close"):
            if len(stack) == 1:
                raise ParseError("unexpected ')'", line, column)
            items, l0, c0 = stack.pop()
            stack[-1][0].append(SList(tuple(items), l0, c0))
        else:
            stack[-1][0].append(Atom(re.sub(r"\s+", "", m.group("atom")), line, column))
    if len(stack) > 1:
        _, line, column = stack[-1]
        raise ParseError("unclosed '('", line, column)
    return stack[0][0]


def split_annotation(text: str) -> Tuple[str, Optional[List[str]]]:
    """``save[1,0]`` -> (``save``, [``1``, ``0``]); plain atoms get ``None``."""
    if "[" not in text:
        return text, None
    head, _, rest = text.partition("[")
    if not rest.endswith("]") or "[" in rest:
        return text, None
    return head, rest[:-1].split(",")


# ---------------------------------------------------------------------------
# annotations
# ---------------------------------------------------------------------------

def parse_multiplicity(text: str, where: SExpr) -> ExtNat:
    if text in ("inf", "∞"):
        return INF
    if not _INT_RE.match(text):
        raise ParseError(f"bad multiplicity '{text}'", where.line, where.column)
    return int(text)


def parse_credit(text: str, where: Optional[SExpr] = None) -> CreditTerm:
    """Read a credit term such as ``2*a+b+1`` or ``inf``."""
    line, column = (where.line, where.column) if where is not None else (0, 0)
    if not text:
        raise ParseError("empty credit term", line, column)
    coeffs: Dict[str, ExtNat] = {}
    const: ExtNat = 0
    try:
        for part in text.split("+"):
            if "*" in part:
                k_text, name = part.split("*", 1)
                if not _IDENT_RE.match(name) or name in RESERVED:
                    raise ParseError(f"bad credit variable '{name}'", line, column)
                k = INF if k_text in ("inf", "∞") else check_nat(int(k_text), "coefficient")
                coeffs[name] = k if name not in coeffs else coeffs[name] + k
            elif part in ("inf", "∞"):
                const = INF
            elif _INT_RE.match(part):
                const = const + int(part)
            elif _IDENT_RE.match(part):
                coeffs[part] = coeffs.get(part, 0) + 1
            else:
                raise ParseError(f"bad credit term '{text}'", line, column)
    except ValueError as e:
        raise ParseError(f"bad credit term '{text}': {e}", line, column) from e
    return CreditTerm.make(coeffs, const)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class LAParser:
    """Builds λ^A types, terms and programs from s-expressions."""

    def __init__(self):
        self._terms: Dict[str, Callable[[str, Optional[List[str]], SList], LATerm]] = {
            "lam": self._lam, "app": self._app, "pair": self._pair, "letp": self._letp,
            "inl": self._inj, "inr": self._inj, "case": self._case, "with": self._with,
            "fst": self._proj, "snd": self._proj, "succ": self._succ, "nrec": self._rec,
            "lrec": self._rec, "nil": self._nil, "emp": self._nil, "cons": self._cons,
            "node": self._node, "treerec": self._treerec, "tick": self._tick,
            "create": self._credit_op, "spend": self._credit_op, "save": self._save,
            "transfer": self._transfer, "pack": self._pack, "unpack": self._unpack,
            "add": self._prim, "leq": self._prim, "phi": self._prim, "dup": self._prim,
        }

    # -- helpers --

    @staticmethod
    def _fail(message: str, where: SExpr):
        raise ParseError(message, where.line, where.column)

    def _arity(self, form: SList, n: int, usage: str) -> Tuple[SExpr, ...]:
        args = form.items[1:]
        if len(args) != n:
            self._fail(f"expected {usage}", form)
        return args

    def _ident(self, sexpr: SExpr) -> str:
        if not isinstance(sexpr, Atom) or not _IDENT_RE.match(sexpr.text) or sexpr.text in RESERVED:
            self._fail("expected an identifier", sexpr)
        return sexpr.text

    def _annotation(self, keyword: str, ann: Optional[List[str]], size: int, form: SList,
                    required: bool = True) -> Optional[List[str]]:
        if ann is None:
            if required:
                self._fail(f"'{keyword}' needs an annotation in square brackets", form)
            return None
        if len(ann) != size:
            self._fail(f"'{keyword}' annotation takes {size} value(s)", form)
        return ann

    def _mult(self, keyword: str, ann: Optional[List[str]], form: SList) -> ExtNat:
        ann = self._annotation(keyword, ann, 1, form, required=False)
        return 1 if ann is None else parse_multiplicity(ann[0], form)

    # -- types --

    def type_of(self, sexpr: SExpr) -> LAType:
        if isinstance(sexpr, Atom):
            simple = {"unit": UNIT_T, "nat": NAT_T, "bit": BIT_T}
            if sexpr.text not in simple:
                self._fail(f"unknown type '{sexpr.text}'", sexpr)
            return simple[sexpr.text]
        if not sexpr.items or not isinstance(sexpr.items[0], Atom):
            self._fail("expected a type constructor", sexpr)
        head, ann = split_annotation(sexpr.items[0].text)
        args = sexpr.items[1:]
        binary = {"*": TTensor, "+": TSum, "-o": TLolli, "&": TWith}
        if head in binary:
            if len(args) < 2:
                self._fail(f"'{head}' takes at least two types", sexpr)
            types = [self.type_of(a) for a in args]
            out = types[-1]
            for ty in reversed(types[:-1]):
                out = binary[head](ty, out)
            return out
        if head in ("list", "tree"):
            (elem,) = self._arity(sexpr, 1, f"({head} A)")
            return (TList if head == "list" else TTree)(self.type_of(elem))
        if head == "!":
            k, c = self._annotation("!", ann, 2, sexpr)
            (body,) = self._arity(sexpr, 1, "(![k,c] A)")
            return TBang(parse_multiplicity(k, sexpr), parse_credit(c, sexpr), self.type_of(body))
        if head == "exists":
            var, body = self._arity(sexpr, 2, "(exists a A)")
            return TExists(self._ident(var), self.type_of(body))
        self._fail(f"unknown type constructor '{head}'", sexpr)

    # -- terms --

    def term_of(self, sexpr: SExpr) -> LATerm:
        if isinstance(sexpr, Atom):
            text = sexpr.text
            if text == "unit":
                return UnitVal()
            if text == "0b":
                return zero_bit()
            if text == "1b":
                return one_bit()
            if _INT_RE.match(text):
                return Num(int(text))
            return Var(self._ident(sexpr))
        if not sexpr.items:
            self._fail("empty form", sexpr)
        if not isinstance(sexpr.items[0], Atom):
            self._fail("expected a keyword at the head of a form", sexpr)
        keyword, ann = split_annotation(sexpr.items[0].text)
        builder = self._terms.get(keyword)
        if builder is None:
            self._fail(f"unknown form '{keyword}'", sexpr)
        if ann is not None and keyword not in ANNOTATED:
            self._fail(f"'{keyword}' takes no annotation", sexpr)
        return builder(keyword, ann, sexpr)

    def _lam(self, kw, ann, form):
        x, ty, body = self._arity(form, 3, "(lam x A M)")
        return Lam(self._ident(x), self.type_of(ty), self.term_of(body))

    def _app(self, kw, ann, form):
        if len(form.items) < 3:
            self._fail("expected (app M N ...)", form)
        out = self.term_of(form.items[1])
        for arg in form.items[2:]:
            out = App(out, self.term_of(arg))
        return out

    def _pair(self, kw, ann, form):
        left, right = self._arity(form, 2, "(pair M N)")
        return Pair(self.term_of(left), self.term_of(right))

    def _letp(self, kw, ann, form):
        x, y, scr, body = self._arity(form, 4, "(letp x y M N)")
        return LetPair(self._ident(x), self._ident(y), self.term_of(scr), self.term_of(body),
                       self._mult(kw, ann, form))

    def _inj(self, kw, ann, form):
        other, body = self._arity(form, 2, f"({kw} A M)")
        return (Inl if kw == "inl" else Inr)(self.term_of(body), self.type_of(other))

    def _branch(self, sexpr: SExpr) -> Tuple[str, LATerm]:
        if not isinstance(sexpr, SList) or len(sexpr.items) != 2:
            self._fail("expected a case branch (x N)", sexpr)
        return self._ident(sexpr.items[0]), self.term_of(sexpr.items[1])

    def _case(self, kw, ann, form):
        scr, left, right = self._arity(form, 3, "(case M (x N1) (y N2))")
        x, n1 = self._branch(left)
        y, n2 = self._branch(right)
        return Case(self.term_of(scr), x, n1, y, n2, self._mult(kw, ann, form))

    def _with(self, kw, ann, form):
        left, right = self._arity(form, 2, "(with M N)")
        return WithPair(self.term_of(left), self.term_of(right))

    def _proj(self, kw, ann, form):
        (body,) = self._arity(form, 1, f"({kw} M)")
        return (Fst if kw == "fst" else Snd)(self.term_of(body))

    def _succ(self, kw, ann, form):
        (body,) = self._arity(form, 1, "(succ M)")
        return Succ(self.term_of(body))

    def _rec(self, kw, ann, form):
        scr, base, step = self._arity(form, 3, f"({kw} M base step)")
        cls = NatRec if kw == "nrec" else ListRec
        return cls(self.term_of(scr), self.term_of(base), self.term_of(step))

    def _nil(self, kw, ann, form):
        (elem,) = self._arity(form, 1, f"({kw} A)")
        return (Nil if kw == "nil" else Emp)(self.type_of(elem))

    def _cons(self, kw, ann, form):
        head, tail = self._arity(form, 2, "(cons M N)")
        return Cons(self.term_of(head), self.term_of(tail))

    def _node(self, kw, ann, form):
        parts = self._arity(form, 4, "(node label size left right)")
        return Node(*(self.term_of(p) for p in parts))

    def _treerec(self, kw, ann, form):
        parts = self._arity(form, 6, "(treerec M empty leaf left-empty right-empty both)")
        return TreeRec(*(self.term_of(p) for p in parts))

    def _tick(self, kw, ann, form):
        (body,) = self._arity(form, 1, "(tick M)")
        return Tick(self.term_of(body))

    def _credit_op(self, kw, ann, form):
        (c,) = self._annotation(kw, ann, 1, form)
        (body,) = self._arity(form, 1, f"({kw}[c] M)")
        return (Create if kw == "create" else Spend)(parse_credit(c, form), self.term_of(body))

    def _save(self, kw, ann, form):
        k, c = self._annotation(kw, ann, 2, form)
        (body,) = self._arity(form, 1, "(save[k,c] M)")
        return Save(parse_multiplicity(k, form), parse_credit(c, form), self.term_of(body))

    def _transfer(self, kw, ann, form):
        y, scr, body = self._arity(form, 3, "(transfer[k] y M N)")
        return Transfer(self._ident(y), self.term_of(scr), self.term_of(body), self._mult(kw, ann, form))

    def _pack(self, kw, ann, form):
        (c,) = self._annotation(kw, ann, 1, form)
        ty, body = self._arity(form, 2, "(pack[c] T M)")
        packed = self.type_of(ty)
        if not isinstance(packed, TExists):
            self._fail("pack needs an (exists a A) type", form)
        return Pack(parse_credit(c, form), packed, self.term_of(body))

    def _unpack(self, kw, ann, form):
        alpha, x, scr, body = self._arity(form, 4, "(unpack a x M N)")
        return Unpack(self._ident(alpha), self._ident(x), self.term_of(scr), self.term_of(body))

    def _prim(self, kw, ann, form):
        arity = 2 if kw in ("add", "leq") else 1
        if len(form.items) - 1 != arity:
            self._fail(f"'{kw}' takes {arity} argument(s)", form)
        return Prim(kw, tuple(self.term_of(a) for a in form.items[1:]))

    # -- programs --

    def definition_of(self, form: SList) -> Definition:
        args = form.items[1:]
        if len(args) == 4:
            name, bank, ty, term = args
            if not isinstance(bank, Atom) or not (bank.text.startswith("[") and bank.text.endswith("]")):
                self._fail("expected a bank annotation such as [2]", bank)
            credit = parse_credit(bank.text[1:-1], bank)
        elif len(args) == 3:
            name, ty, term = args
            credit = CreditTerm()
        else:
            self._fail("expected (def name [bank] type term)", form)
        return Definition(name=self._ident(name), type=self.type_of(ty), term=self.term_of(term), bank=credit)

    def program_of(self, forms: List[SExpr]) -> ProgramFile:
        program = ProgramFile()
        main = None
        for form in forms:
            is_def = (isinstance(form, SList) and form.items and isinstance(form.items[0], Atom)
                      and form.items[0].text == "def")
            if is_def:
                definition = self.definition_of(form)
                if definition.name in program:
                    self._fail(f"duplicate definition '{definition.name}'", form)
                program = program.add(definition)
                continue
            if main is not None:
                self._fail("more than one main term", form)
            is_main = (isinstance(form, SList) and form.items and isinstance(form.items[0], Atom)
                       and form.items[0].text == "main")
            if is_main:
                (body,) = self._arity(form, 1, "(main M)")
                main = self.term_of(body)
            else:
                main = self.term_of(form)
        return ProgramFile(definitions=program.definitions, main=main)


_PARSER = LAParser()


def _single(text: str) -> SExpr:
    forms = read_sexprs(text)
    if len(forms) != 1:
        line, column = (forms[1].line, forms[1].column) if len(forms) > 1 else (1, 1)
        raise ParseError(f"expected exactly one form, found {len(forms)}", line, column)
    return forms[0]


def parse_type(text: str) -> LAType:
    return _PARSER.type_of(_single(text))


def parse_term(text: str) -> LATerm:
    return _PARSER.term_of(_single(text))


def parse_program(text: str) -> ProgramFile:
    return _PARSER.program_of(read_sexprs(text))


parse = parse_program


def load_program(path) -> ProgramFile:
    with open(path, "r", encoding="utf-8") as f:
        return parse_program(f.read())
