# data_models/lc_syntax.py
"""Abstract syntax of the recurrence language λ^C."""
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Tuple

from data_models.binding import Syntax
from data_models.extended import ExtInt, ExtNat


class LCType:
    pass


@dataclass(frozen=True)
class LCCost(LCType):
    pass


@dataclass(frozen=True)
class LCDollar(LCType):
    pass


@dataclass(frozen=True)
class LCUnit(LCType):
    pass


@dataclass(frozen=True)
class LCNat(LCType):
    pass


@dataclass(frozen=True)
class LCProd(LCType):
    left: LCType
    right: LCType


@dataclass(frozen=True)
class LCSum(LCType):
    left: LCType
    right: LCType


@dataclass(frozen=True)
class LCArrow(LCType):
    arg: LCType
    res: LCType


@dataclass(frozen=True)
class LCList(LCType):
    elem: LCType


@dataclass(frozen=True)
class LCTree(LCType):
    elem: LCType


COST_T = LCCost()
DOLLAR_T = LCDollar()
LC_UNIT_T = LCUnit()
LC_NAT_T = LCNat()


class LCTerm:
    _binders = {}

    @cached_property
    def free_vars(self) -> FrozenSet[str]:
        return LC.compute_free_vars(self)


@dataclass(frozen=True)
class CVar(LCTerm):
    name: str


@dataclass(frozen=True)
class CLam(LCTerm):
    var: str
    ty: LCType
    body: LCTerm
    _binders = {"body": ("var",)}


@dataclass(frozen=True)
class CApp(LCTerm):
    fn: LCTerm
    arg: LCTerm


@dataclass(frozen=True)
class CPair(LCTerm):
    left: LCTerm
    right: LCTerm


@dataclass(frozen=True)
class CFst(LCTerm):
    body: LCTerm


@dataclass(frozen=True)
class CSnd(LCTerm):
    body: LCTerm


@dataclass(frozen=True)
class CInl(LCTerm):
    body: LCTerm
    other: LCType


@dataclass(frozen=True)
class CInr(LCTerm):
    body: LCTerm
    other: LCType


@dataclass(frozen=True)
class CCase(LCTerm):
    scrutinee: LCTerm
    left_var: str
    left: LCTerm
    right_var: str
    right: LCTerm
    _binders = {"left": ("left_var",), "right": ("right_var",)}


@dataclass(frozen=True)
class CUnitVal(LCTerm):
    pass


@dataclass(frozen=True)
class CNum(LCTerm):
    value: ExtNat


@dataclass(frozen=True)
class CSucc(LCTerm):
    body: LCTerm


@dataclass(frozen=True)
class CNatRec(LCTerm):
    """``nrec E E0 E1`` with E0 : T and E1 : ℕ × T → T."""
    scrutinee: LCTerm
    base: LCTerm
    step: LCTerm


@dataclass(frozen=True)
class CNil(LCTerm):
    elem: LCType


@dataclass(frozen=True)
class CCons(LCTerm):
    head: LCTerm
    tail: LCTerm


@dataclass(frozen=True)
class CListRec(LCTerm):
    """``lrec E E0 E1`` with E1 : T₁ × (list T₁ × T) → T."""
    scrutinee: LCTerm
    base: LCTerm
    step: LCTerm


@dataclass(frozen=True)
class CEmp(LCTerm):
    elem: LCType


@dataclass(frozen=True)
class CNode(LCTerm):
    label: LCTerm
    size: LCTerm
    left: LCTerm
    right: LCTerm


@dataclass(frozen=True)
class CTreeRec(LCTerm):
    scrutinee: LCTerm
    empty: LCTerm
    leaf: LCTerm
    left_empty: LCTerm
    right_empty: LCTerm
    both: LCTerm


@dataclass(frozen=True)
class CConst(LCTerm):
    value: ExtInt


@dataclass(frozen=True)
class CAdd(LCTerm):
    left: LCTerm
    right: LCTerm


@dataclass(frozen=True)
class CMax(LCTerm):
    left: LCTerm
    right: LCTerm


@dataclass(frozen=True)
class CScale(LCTerm):
    mult: ExtNat
    body: LCTerm


@dataclass(frozen=True)
class CNeg(LCTerm):
    body: LCTerm


@dataclass(frozen=True)
class DConst(LCTerm):
    value: ExtNat


@dataclass(frozen=True)
class DAdd(LCTerm):
    left: LCTerm
    right: LCTerm


@dataclass(frozen=True)
class ToCost(LCTerm):
    body: LCTerm


@dataclass(frozen=True)
class CPrim(LCTerm):
    op: str
    args: Tuple[LCTerm, ...] = field(default=())


LC = Syntax(LCTerm, CVar)


def lc_subst(term: LCTerm, name: str, value: LCTerm) -> LCTerm:
    return LC.substitute(term, name, value)


def alpha_equal(a: LCTerm, b: LCTerm) -> bool:
    return LC.alpha_equal(a, b)


def let_in(name: str, ty: LCType, bound: LCTerm, body: LCTerm) -> LCTerm:
    """``let name = bound in body`` as the β-redex ``(λname:ty. body) bound``."""
    return CApp(CLam(name, ty, body), bound)


def cost_sum(*terms: LCTerm) -> LCTerm:
    items = [t for t in terms if t != CConst(0)]
    if not items:
        return CConst(0)
    out = items[0]
    for item in items[1:]:
        out = CAdd(out, item)
    return out


def complexity_cost(e: LCTerm) -> LCTerm:
    return CFst(e)


def complexity_potential(e: LCTerm) -> LCTerm:
    return CSnd(e)


def lc_tree_view_type(elem: LCType, result: LCType) -> LCType:
    suspended = LCProd(LCTree(elem), result)
    return LCProd(elem, LCProd(LC_NAT_T, LCProd(suspended, suspended)))


def lc_tree_branch_types(elem: LCType, result: LCType) -> Tuple[LCType, ...]:
    view = lc_tree_view_type(elem, result)
    return (
        result,
        LCArrow(LCProd(elem, LC_NAT_T), result),
        LCArrow(LCProd(elem, LCProd(LC_NAT_T, view)), result),
        LCArrow(LCProd(elem, LCProd(LC_NAT_T, view)), result),
        LCArrow(LCProd(elem, LCProd(LC_NAT_T, LCProd(view, view))), result),
    )
