# utils/la_printer.py
"""Printers for λ^A programs, λ^C recurrences and erased STLC terms.

Everything is first turned into a nested list "doc" (head followed by
children) and then laid out: a form that fits in the line width is printed
flat, otherwise its children go on their own lines indented by two spaces.
λ^A output reads back through :mod:`utils.la_parser` unchanged.
"""
from typing import List, Union

from data_models.credits import CreditTerm
from data_models.extended import format_ext
from data_models.la_syntax import (
    BIT_T, App, Case, Cons, Create, Emp, Fst, Inl, Inr, LATerm, LAType, Lam, LetPair, ListRec,
    NatRec, Nil, Node, Num, Pack, Pair, Prim, Save, Snd, Spend, Succ, TBang, TExists, TList, TLolli,
    TNat, TSum, TTensor, TTree, TUnit, TWith, Tick, Transfer, TreeRec, UnitVal, Unpack, Var, WithPair,
    one_bit, zero_bit,
)
from data_models.lc_syntax import (
    CAdd, CApp, CCase, CConst, CCons, CEmp, CFst, CInl, CInr, CLam, CListRec, CMax, CNatRec, CNeg,
    CNil, CNode, CNum, CPair, CPrim, CScale, CSnd, CSucc, CTreeRec, CUnitVal, CVar, DAdd, DConst,
    LCArrow, LCCost, LCDollar, LCList, LCNat, LCProd, LCSum, LCTerm, LCTree, LCType, LCUnit, ToCost,
)
from data_models.program import Definition, ProgramFile
from data_models.stlc_syntax import (
    SApp, SCase, SCons, SEmp, SFst, SInl, SInr, SLam, SLazyPair, SLet, SLetPair, SListRec, SNatRec,
    SNil, SNode, SNum, SPair, SPrim, SSnd, SSucc, STick, STLCTerm, STreeRec, SUnit, SVar,
)

WIDTH = 80

Doc = Union[str, list]


def render(doc: Doc, indent: int = 0, width: int = WIDTH) -> str:
    flat = _flat(doc)
    if isinstance(doc, str) or indent + len(flat) <= width:
        return flat
    pad = " " * (indent + 2)
    lines = ["(" + _flat(doc[0])]
    lines += [pad + render(child, indent + 2, width) for child in doc[1:]]
    return "\n".join(lines) + ")"


def _flat(doc: Doc) -> str:
    if isinstance(doc, str):
        return doc
    return "(" + " ".join(_flat(d) for d in doc) + ")"


def _ann(mult) -> str:
    return "" if mult == 1 else f"[{format_ext(mult)}]"


def _spine(term, app_cls) -> List:
    args = []
    while isinstance(term, app_cls):
        args.append(term.arg)
        term = term.fn
    return [term] + list(reversed(args))


# ---------------------------------------------------------------------------
# λ^A
# ---------------------------------------------------------------------------

_LA_BINARY_TYPES = {TTensor: "*", TSum: "+", TLolli: "-o", TWith: "&"}


def type_doc(ty: LAType) -> Doc:
    if ty == BIT_T:
        return "bit"
    if isinstance(ty, TUnit):
        return "unit"
    if isinstance(ty, TNat):
        return "nat"
    if isinstance(ty, TLolli):
        return ["-o", type_doc(ty.arg), type_doc(ty.res)]
    if type(ty) in _LA_BINARY_TYPES:
        return [_LA_BINARY_TYPES[type(ty)], type_doc(ty.left), type_doc(ty.right)]
    if isinstance(ty, TList):
        return ["list", type_doc(ty.elem)]
    if isinstance(ty, TTree):
        return ["tree", type_doc(ty.elem)]
    if isinstance(ty, TBang):
        return [f"![{format_ext(ty.mult)},{ty.credit}]", type_doc(ty.body)]
    if isinstance(ty, TExists):
        return ["exists", ty.var, type_doc(ty.body)]
    raise TypeError(f"not a λ^A type: {ty!r}")


def term_doc(t: LATerm) -> Doc:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, UnitVal):
        return "unit"
    if isinstance(t, Num):
        return str(t.value)
    if t == zero_bit():
        return "0b"
    if t == one_bit():
        return "1b"
    if isinstance(t, Lam):
        return ["lam", t.var, type_doc(t.ty), term_doc(t.body)]
    if isinstance(t, App):
        return ["app"] + [term_doc(p) for p in _spine(t, App)]
    if isinstance(t, Pair):
        return ["pair", term_doc(t.left), term_doc(t.right)]
    if isinstance(t, LetPair):
        return ["letp" + _ann(t.mult), t.left_var, t.right_var, term_doc(t.scrutinee), term_doc(t.body)]
    if isinstance(t, (Inl, Inr)):
        return ["inl" if isinstance(t, Inl) else "inr", type_doc(t.other), term_doc(t.body)]
    if isinstance(t, Case):
        return ["case" + _ann(t.mult), term_doc(t.scrutinee),
                [t.left_var, term_doc(t.left)], [t.right_var, term_doc(t.right)]]
    if isinstance(t, WithPair):
        return ["with", term_doc(t.left), term_doc(t.right)]
    if isinstance(t, (Fst, Snd)):
        return ["fst" if isinstance(t, Fst) else "snd", term_doc(t.body)]
    if isinstance(t, Succ):
        return ["succ", term_doc(t.body)]
    if isinstance(t, (NatRec, ListRec)):
        head = "nrec" if isinstance(t, NatRec) else "lrec"
        return [head, term_doc(t.scrutinee), term_doc(t.base), term_doc(t.step)]
    if isinstance(t, (Nil, Emp)):
        return ["nil" if isinstance(t, Nil) else "emp", type_doc(t.elem)]
    if isinstance(t, Cons):
        return ["cons", term_doc(t.head), term_doc(t.tail)]
    if isinstance(t, Node):
        return ["node"] + [term_doc(p) for p in (t.label, t.size, t.left, t.right)]
    if isinstance(t, TreeRec):
        parts = (t.scrutinee, t.empty, t.leaf, t.left_empty, t.right_empty, t.both)
        return ["treerec"] + [term_doc(p) for p in parts]
    if isinstance(t, Tick):
        return ["tick", term_doc(t.body)]
    if isinstance(t, (Create, Spend)):
        head = "create" if isinstance(t, Create) else "spend"
        return [f"{head}[{t.credit}]", term_doc(t.body)]
    if isinstance(t, Save):
        return [f"save[{format_ext(t.mult)},{t.credit}]", term_doc(t.body)]
    if isinstance(t, Transfer):
        return ["transfer" + _ann(t.mult), t.var, term_doc(t.scrutinee), term_doc(t.body)]
    if isinstance(t, Pack):
        return [f"pack[{t.credit}]", type_doc(t.ty), term_doc(t.body)]
    if isinstance(t, Unpack):
        return ["unpack", t.credit_var, t.var, term_doc(t.scrutinee), term_doc(t.body)]
    if isinstance(t, Prim):
        return [t.op] + [term_doc(a) for a in t.args]
    raise TypeError(f"not a λ^A term: {t!r}")


def format_type(ty: LAType) -> str:
    return render(type_doc(ty))


def format_term(t: LATerm, indent: int = 0) -> str:
    return render(term_doc(t), indent)


def format_credit(c: CreditTerm) -> str:
    return str(c)


def definition_doc(d: Definition) -> Doc:
    doc = ["def", d.name]
    if not d.bank.is_zero():
        doc.append(f"[{d.bank}]")
    return doc + [type_doc(d.type), term_doc(d.term)]


def format_program(program: ProgramFile) -> str:
    blocks = [render(definition_doc(d)) for d in program.definitions]
    if program.main is not None:
        blocks.append(render(["main", term_doc(program.main)]))
    return "\n\n".join(blocks) + "\n"


# ---------------------------------------------------------------------------
# λ^C
# ---------------------------------------------------------------------------

def lc_type_doc(ty: LCType) -> Doc:
    simple = {LCCost: "cost", LCDollar: "dollar", LCUnit: "unit", LCNat: "nat"}
    if type(ty) in simple:
        return simple[type(ty)]
    if isinstance(ty, LCArrow):
        return ["->", lc_type_doc(ty.arg), lc_type_doc(ty.res)]
    if isinstance(ty, (LCProd, LCSum)):
        return ["*" if isinstance(ty, LCProd) else "+", lc_type_doc(ty.left), lc_type_doc(ty.right)]
    if isinstance(ty, (LCList, LCTree)):
        return ["list" if isinstance(ty, LCList) else "tree", lc_type_doc(ty.elem)]
    raise TypeError(f"not a λ^C type: {ty!r}")


def lc_term_doc(e: LCTerm) -> Doc:
    if isinstance(e, CVar):
        return e.name
    if isinstance(e, CUnitVal):
        return "unit"
    if isinstance(e, CNum):
        return format_ext(e.value)
    if isinstance(e, CConst):
        return ["cost", format_ext(e.value)]
    if isinstance(e, DConst):
        return ["dollar", format_ext(e.value)]
    if isinstance(e, CLam):
        return ["lam", e.var, lc_type_doc(e.ty), lc_term_doc(e.body)]
    if isinstance(e, CApp):
        return ["app"] + [lc_term_doc(p) for p in _spine(e, CApp)]
    if isinstance(e, CPair):
        return ["pair", lc_term_doc(e.left), lc_term_doc(e.right)]
    if isinstance(e, (CFst, CSnd)):
        return ["fst" if isinstance(e, CFst) else "snd", lc_term_doc(e.body)]
    if isinstance(e, (CInl, CInr)):
        return ["inl" if isinstance(e, CInl) else "inr", lc_type_doc(e.other), lc_term_doc(e.body)]
    if isinstance(e, CCase):
        return ["case", lc_term_doc(e.scrutinee), [e.left_var, lc_term_doc(e.left)],
                [e.right_var, lc_term_doc(e.right)]]
    if isinstance(e, CSucc):
        return ["succ", lc_term_doc(e.body)]
    if isinstance(e, (CNatRec, CListRec)):
        head = "nrec" if isinstance(e, CNatRec) else "lrec"
        return [head, lc_term_doc(e.scrutinee), lc_term_doc(e.base), lc_term_doc(e.step)]
    if isinstance(e, (CNil, CEmp)):
        return ["nil" if isinstance(e, CNil) else "emp", lc_type_doc(e.elem)]
    if isinstance(e, CCons):
        return ["cons", lc_term_doc(e.head), lc_term_doc(e.tail)]
    if isinstance(e, CNode):
        return ["node"] + [lc_term_doc(p) for p in (e.label, e.size, e.left, e.right)]
    if isinstance(e, CTreeRec):
        parts = (e.scrutinee, e.empty, e.leaf, e.left_empty, e.right_empty, e.both)
        return ["treerec"] + [lc_term_doc(p) for p in parts]
    if isinstance(e, (CAdd, CMax, DAdd)):
        head = {CAdd: "+", CMax: "max", DAdd: "$+"}[type(e)]
        return [head, lc_term_doc(e.left), lc_term_doc(e.right)]
    if isinstance(e, CScale):
        return ["scale", format_ext(e.mult), lc_term_doc(e.body)]
    if isinstance(e, CNeg):
        return ["neg", lc_term_doc(e.body)]
    if isinstance(e, ToCost):
        return ["toC", lc_term_doc(e.body)]
    if isinstance(e, CPrim):
        return [e.op] + [lc_term_doc(a) for a in e.args]
    raise TypeError(f"not a λ^C term: {e!r}")


def format_lc_type(ty: LCType) -> str:
    return render(lc_type_doc(ty))


def format_lc_term(e: LCTerm, indent: int = 0) -> str:
    return render(lc_term_doc(e), indent)


# ---------------------------------------------------------------------------
# STLC
# ---------------------------------------------------------------------------

def stlc_doc(t: STLCTerm) -> Doc:
    if isinstance(t, SVar):
        return t.name
    if isinstance(t, SUnit):
        return "unit"
    if isinstance(t, SNum):
        return str(t.value)
    if isinstance(t, SNil):
        return "nil"
    if isinstance(t, SEmp):
        return "emp"
    if isinstance(t, SLam):
        if t.ty is None:
            return ["lam", t.var, stlc_doc(t.body)]
        return ["lam", t.var, type_doc(t.ty), stlc_doc(t.body)]
    if isinstance(t, SApp):
        return ["app"] + [stlc_doc(p) for p in _spine(t, SApp)]
    if isinstance(t, SLet):
        return ["let", t.var, stlc_doc(t.bound), stlc_doc(t.body)]
    if isinstance(t, SPair):
        return ["pair", stlc_doc(t.left), stlc_doc(t.right)]
    if isinstance(t, SLazyPair):
        return ["lazy", stlc_doc(t.left), stlc_doc(t.right)]
    if isinstance(t, SLetPair):
        return ["letp", t.left_var, t.right_var, stlc_doc(t.scrutinee), stlc_doc(t.body)]
    if isinstance(t, (SInl, SInr)):
        return ["inl" if isinstance(t, SInl) else "inr", stlc_doc(t.body)]
    if isinstance(t, SCase):
        return ["case", stlc_doc(t.scrutinee), [t.left_var, stlc_doc(t.left)],
                [t.right_var, stlc_doc(t.right)]]
    if isinstance(t, (SFst, SSnd)):
        return ["fst" if isinstance(t, SFst) else "snd", stlc_doc(t.body)]
    if isinstance(t, SSucc):
        return ["succ", stlc_doc(t.body)]
    if isinstance(t, (SNatRec, SListRec)):
        head = "nrec" if isinstance(t, SNatRec) else "lrec"
        return [head, stlc_doc(t.scrutinee), stlc_doc(t.base), stlc_doc(t.step)]
    if isinstance(t, SCons):
        return ["cons", stlc_doc(t.head), stlc_doc(t.tail)]
    if isinstance(t, SNode):
        return ["node"] + [stlc_doc(p) for p in (t.label, t.size, t.left, t.right)]
    if isinstance(t, STreeRec):
        parts = (t.scrutinee, t.empty, t.leaf, t.left_empty, t.right_empty, t.both)
        return ["treerec"] + [stlc_doc(p) for p in parts]
    if isinstance(t, STick):
        return ["tick", stlc_doc(t.body)]
    if isinstance(t, SPrim):
        return [t.op] + [stlc_doc(a) for a in t.args]
    raise TypeError(f"not an STLC term: {t!r}")


def format_stlc(t: STLCTerm, indent: int = 0) -> str:
    return render(stlc_doc(t), indent)
