# data_models/la_syntax.py
"""Abstract syntax of the affine source language λ^A.

Types and terms are frozen dataclasses. Binder annotations that synthesis
needs (λ-binders, the other summand of an injection, element types of
``nil``/``emp``, the ∃-type of ``pack``) are stored on the nodes.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Tuple, Union

from data_models.binding import Syntax, fresh_name
from data_models.credits import CreditTerm, ZERO_CREDIT
from data_models.extended import INF, ExtNat


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

class LAType:
    pass


@dataclass(frozen=True)
class TUnit(LAType):
    pass


@dataclass(frozen=True)
class TNat(LAType):
    pass


@dataclass(frozen=True)
class TTensor(LAType):
    left: LAType
    right: LAType


@dataclass(frozen=True)
class TSum(LAType):
    left: LAType
    right: LAType


@dataclass(frozen=True)
class TLolli(LAType):
    arg: LAType
    res: LAType


@dataclass(frozen=True)
class TWith(LAType):
    left: LAType
    right: LAType


@dataclass(frozen=True)
class TList(LAType):
    elem: LAType


@dataclass(frozen=True)
class TTree(LAType):
    elem: LAType


@dataclass(frozen=True)
class TBang(LAType):
    mult: ExtNat
    credit: CreditTerm
    body: LAType


@dataclass(frozen=True)
class TExists(LAType):
    var: str
    body: LAType


UNIT_T = TUnit()
NAT_T = TNat()
BIT_T = TSum(UNIT_T, TBang(1, CreditTerm.constant(1), UNIT_T))


def bang(mult: ExtNat, credit, body: LAType) -> TBang:
    if not isinstance(credit, CreditTerm):
        credit = CreditTerm.constant(credit)
    return TBang(mult, credit, body)


def type_credit_vars(ty: LAType) -> FrozenSet[str]:
    if isinstance(ty, (TUnit, TNat)):
        return frozenset()
    if isinstance(ty, TBang):
        return ty.credit.free_vars | type_credit_vars(ty.body)
    if isinstance(ty, TExists):
        return type_credit_vars(ty.body) - {ty.var}
    if isinstance(ty, (TList, TTree)):
        return type_credit_vars(ty.elem)
    if isinstance(ty, TLolli):
        return type_credit_vars(ty.arg) | type_credit_vars(ty.res)
    return type_credit_vars(ty.left) | type_credit_vars(ty.right)


def type_credit_subst(ty: LAType, alpha: str, c: CreditTerm) -> LAType:
    if alpha not in type_credit_vars(ty):
        return ty
    if isinstance(ty, TBang):
        return TBang(ty.mult, ty.credit.subst(alpha, c), type_credit_subst(ty.body, alpha, c))
    if isinstance(ty, TExists):
        var, body = ty.var, ty.body
        if var in c.free_vars:
            new = fresh_name(var, c.free_vars | type_credit_vars(body) | {alpha})
            body = type_credit_subst(body, var, CreditTerm.var(new))
            var = new
        return TExists(var, type_credit_subst(body, alpha, c))
    if isinstance(ty, TList):
        return TList(type_credit_subst(ty.elem, alpha, c))
    if isinstance(ty, TTree):
        return TTree(type_credit_subst(ty.elem, alpha, c))
    if isinstance(ty, TLolli):
        return TLolli(type_credit_subst(ty.arg, alpha, c), type_credit_subst(ty.res, alpha, c))
    return type(ty)(type_credit_subst(ty.left, alpha, c), type_credit_subst(ty.right, alpha, c))


def canonical_type(ty: LAType, depth: int = 0) -> LAType:
    """Rename ∃-bound credit variables to depth indices (``%0``, ``%1``…)."""
    if isinstance(ty, (TUnit, TNat)):
        return ty
    if isinstance(ty, TExists):
        name = f"%{depth}"
        body = type_credit_subst(ty.body, ty.var, CreditTerm.var(name)) if ty.var != name else ty.body
        return TExists(name, canonical_type(body, depth + 1))
    if isinstance(ty, TBang):
        return TBang(ty.mult, ty.credit, canonical_type(ty.body, depth))
    if isinstance(ty, TList):
        return TList(canonical_type(ty.elem, depth))
    if isinstance(ty, TTree):
        return TTree(canonical_type(ty.elem, depth))
    if isinstance(ty, TLolli):
        return TLolli(canonical_type(ty.arg, depth), canonical_type(ty.res, depth))
    return type(ty)(canonical_type(ty.left, depth), canonical_type(ty.right, depth))


def type_equal(a: LAType, b: LAType) -> bool:
    """Equality up to renaming of ∃-bound credit variables."""
    return a == b or canonical_type(a) == canonical_type(b)


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

class LATerm:
    _binders = {}

    @cached_property
    def free_vars(self) -> FrozenSet[str]:
        return LA.compute_free_vars(self)

    @cached_property
    def credit_vars(self) -> FrozenSet[str]:
        return _compute_credit_vars(self)


@dataclass(frozen=True)
class Var(LATerm):
    name: str


@dataclass(frozen=True)
class Lam(LATerm):
    var: str
    ty: LAType
    body: LATerm
    _binders = {"body": ("var",)}


@dataclass(frozen=True)
class App(LATerm):
    fn: LATerm
    arg: LATerm


@dataclass(frozen=True)
class Pair(LATerm):
    left: LATerm
    right: LATerm


@dataclass(frozen=True)
class LetPair(LATerm):
    """``letp^k (x, y) = M in N`` eliminating k copies of a tensor at once."""
    left_var: str
    right_var: str
    scrutinee: LATerm
    body: LATerm
    mult: ExtNat = 1
    _binders = {"body": ("left_var", "right_var")}


@dataclass(frozen=True)
class Inl(LATerm):
    body: LATerm
    other: LAType


@dataclass(frozen=True)
class Inr(LATerm):
    body: LATerm
    other: LAType


@dataclass(frozen=True)
class Case(LATerm):
    scrutinee: LATerm
    left_var: str
    left: LATerm
    right_var: str
    right: LATerm
    mult: ExtNat = 1
    _binders = {"left": ("left_var",), "right": ("right_var",)}


@dataclass(frozen=True)
class WithPair(LATerm):
    left: LATerm
    right: LATerm


@dataclass(frozen=True)
class Fst(LATerm):
    body: LATerm


@dataclass(frozen=True)
class Snd(LATerm):
    body: LATerm


@dataclass(frozen=True)
class UnitVal(LATerm):
    pass


@dataclass(frozen=True)
class Num(LATerm):
    value: int


@dataclass(frozen=True)
class Succ(LATerm):
    body: LATerm


@dataclass(frozen=True)
class NatRec(LATerm):
    scrutinee: LATerm
    base: LATerm
    step: LATerm


@dataclass(frozen=True)
class Nil(LATerm):
    elem: LAType


@dataclass(frozen=True)
class Cons(LATerm):
    head: LATerm
    tail: LATerm


@dataclass(frozen=True)
class ListRec(LATerm):
    scrutinee: LATerm
    base: LATerm
    step: LATerm


@dataclass(frozen=True)
class Emp(LATerm):
    elem: LAType


@dataclass(frozen=True)
class Node(LATerm):
    label: LATerm
    size: LATerm
    left: LATerm
    right: LATerm


@dataclass(frozen=True)
class TreeRec(LATerm):
    scrutinee: LATerm
    empty: LATerm
    leaf: LATerm
    left_empty: LATerm
    right_empty: LATerm
    both: LATerm


@dataclass(frozen=True)
class Tick(LATerm):
    body: LATerm


@dataclass(frozen=True)
class Create(LATerm):
    credit: CreditTerm
    body: LATerm


@dataclass(frozen=True)
class Spend(LATerm):
    credit: CreditTerm
    body: LATerm


@dataclass(frozen=True)
class Save(LATerm):
    mult: ExtNat
    credit: CreditTerm
    body: LATerm


@dataclass(frozen=True)
class Transfer(LATerm):
    """``transfer^k' !y = M to N``."""
    var: str
    scrutinee: LATerm
    body: LATerm
    mult: ExtNat = 1
    _binders = {"body": ("var",)}


@dataclass(frozen=True)
class Pack(LATerm):
    credit: CreditTerm
    ty: TExists
    body: LATerm


@dataclass(frozen=True)
class Unpack(LATerm):
    credit_var: str
    var: str
    scrutinee: LATerm
    body: LATerm
    _binders = {"body": ("var",)}


PRIM_ARITY = {"add": 2, "leq": 2, "phi": 1, "dup": 1}


@dataclass(frozen=True)
class Prim(LATerm):
    """Zero-cost natural-number primitives: add, leq, phi, dup."""
    op: str
    args: Tuple[LATerm, ...] = field(default=())

    def __post_init__(self):
        if self.op not in PRIM_ARITY:
            raise ValueError(f"unknown primitive {self.op!r}")
        if len(self.args) != PRIM_ARITY[self.op]:
            raise ValueError(f"primitive {self.op} takes {PRIM_ARITY[self.op]} arguments")


LA = Syntax(LATerm, Var)

TermOrType = Union[LATerm, LAType, CreditTerm]


def _compute_credit_vars(term: LATerm) -> FrozenSet[str]:
    acc = set()
    for name in LA.fields_of(type(term)):
        value = getattr(term, name)
        if isinstance(value, LATerm):
            inner = value.credit_vars
            if isinstance(term, Unpack) and name == "body":
                inner = inner - {term.credit_var}
            acc |= inner
        elif isinstance(value, tuple):
            for item in value:
                if isinstance(item, LATerm):
                    acc |= item.credit_vars
        elif isinstance(value, LAType):
            acc |= type_credit_vars(value)
        elif isinstance(value, CreditTerm):
            acc |= value.free_vars
    return frozenset(acc)


def term_credit_subst(term: LATerm, alpha: str, c: CreditTerm) -> LATerm:
    if alpha not in term.credit_vars:
        return term
    changes = {}
    for name in LA.fields_of(type(term)):
        value = getattr(term, name)
        if isinstance(term, Unpack) and name == "body":
            if term.credit_var == alpha:
                continue
            if term.credit_var in c.free_vars:
                new = fresh_name(term.credit_var, c.free_vars | value.credit_vars | {alpha})
                value = term_credit_subst(value, term.credit_var, CreditTerm.var(new))
                changes["credit_var"] = new
            changes[name] = term_credit_subst(value, alpha, c)
        elif isinstance(value, LATerm):
            changes[name] = term_credit_subst(value, alpha, c)
        elif isinstance(value, tuple) and value and isinstance(value[0], LATerm):
            changes[name] = tuple(term_credit_subst(v, alpha, c) for v in value)
        elif isinstance(value, LAType):
            changes[name] = type_credit_subst(value, alpha, c)
        elif isinstance(value, CreditTerm):
            changes[name] = value.subst(alpha, c)
    return type(term)(**{n: changes.get(n, getattr(term, n)) for n in LA.fields_of(type(term))})


def credit_subst(target: TermOrType, alpha: str, c: CreditTerm):
    """Replace the credit variable ``alpha`` by ``c`` in a type, term or credit term."""
    if isinstance(target, CreditTerm):
        return target.subst(alpha, c)
    if isinstance(target, LAType):
        return type_credit_subst(target, alpha, c)
    if hasattr(target, "credit_subst"):
        return target.credit_subst(alpha, c)
    return term_credit_subst(target, alpha, c)


def subst(term: LATerm, name: str, value: LATerm) -> LATerm:
    return LA.substitute(term, name, value)


def is_value(term: LATerm) -> bool:
    if isinstance(term, (Lam, UnitVal, Num, Nil, Emp, WithPair)):
        return True
    if isinstance(term, Pair):
        return is_value(term.left) and is_value(term.right)
    if isinstance(term, Cons):
        return is_value(term.head) and is_value(term.tail)
    if isinstance(term, (Inl, Inr, Save, Pack)):
        return is_value(term.body)
    if isinstance(term, Node):
        return all(is_value(t) for t in (term.label, term.size, term.left, term.right))
    return False


def contains_tick(term: LATerm) -> bool:
    return LA.contains(term, lambda t: isinstance(t, Tick))


# ---------------------------------------------------------------------------
# Recursor branch types
# ---------------------------------------------------------------------------

def step_type(arg: LAType, result: LAType) -> TBang:
    return TBang(INF, ZERO_CREDIT, TLolli(arg, result))


def nat_branch_types(result: LAType) -> Tuple[LAType, LAType]:
    base = TLolli(UNIT_T, result)
    return base, step_type(TTensor(NAT_T, TLolli(UNIT_T, result)), result)


def list_branch_types(elem: LAType, result: LAType) -> Tuple[LAType, LAType]:
    base = TLolli(UNIT_T, result)
    return base, step_type(TTensor(elem, TWith(TList(elem), result)), result)


def tree_view_type(elem: LAType, result: LAType) -> LAType:
    """A node child as seen by treerec: label ⊗ (size ⊗ (S ⊗ S)), S = tree & C."""
    suspended = TWith(TTree(elem), result)
    return TTensor(elem, TTensor(NAT_T, TTensor(suspended, suspended)))


def tree_branch_types(elem: LAType, result: LAType) -> Tuple[LAType, ...]:
    view = tree_view_type(elem, result)
    return (
        TLolli(UNIT_T, result),
        step_type(TTensor(elem, NAT_T), result),
        step_type(TTensor(elem, TTensor(NAT_T, view)), result),
        step_type(TTensor(elem, TTensor(NAT_T, view)), result),
        step_type(TTensor(elem, TTensor(NAT_T, TTensor(view, view))), result),
    )


def zero_bit() -> LATerm:
    return Inl(UnitVal(), BIT_T.right)


def one_bit() -> LATerm:
    return Inr(Save(1, CreditTerm.constant(1), UnitVal()), BIT_T.left)


def list_literal(items, elem: LAType) -> LATerm:
    out: LATerm = Nil(elem)
    for item in reversed(list(items)):
        out = Cons(item, out)
    return out


def bit_list(bits) -> LATerm:
    """Least significant bit first; the 1 bits carry their saved credit."""
    return list_literal([one_bit() if b else zero_bit() for b in bits], BIT_T)
