# data_models/stlc_syntax.py
"""Erasure target: a plain call-by-value λ-calculus with ticks.

Types are λ^A types with the modality and credit existentials removed.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Optional, Tuple

from data_models.binding import Syntax
from data_models.la_syntax import LAType


class STLCTerm:
    _binders = {}

    @cached_property
    def free_vars(self) -> FrozenSet[str]:
        return STLC.compute_free_vars(self)


@dataclass(frozen=True)
class SVar(STLCTerm):
    name: str


@dataclass(frozen=True)
class SLam(STLCTerm):
    var: str
    ty: Optional[LAType]
    body: STLCTerm
    _binders = {"body": ("var",)}


@dataclass(frozen=True)
class SApp(STLCTerm):
    fn: STLCTerm
    arg: STLCTerm


@dataclass(frozen=True)
class SLet(STLCTerm):
    var: str
    bound: STLCTerm
    body: STLCTerm
    _binders = {"body": ("var",)}


@dataclass(frozen=True)
class SPair(STLCTerm):
    left: STLCTerm
    right: STLCTerm


@dataclass(frozen=True)
class SLetPair(STLCTerm):
    left_var: str
    right_var: str
    scrutinee: STLCTerm
    body: STLCTerm
    _binders = {"body": ("left_var", "right_var")}


@dataclass(frozen=True)
class SInl(STLCTerm):
    body: STLCTerm


@dataclass(frozen=True)
class SInr(STLCTerm):
    body: STLCTerm


@dataclass(frozen=True)
class SCase(STLCTerm):
    scrutinee: STLCTerm
    left_var: str
    left: STLCTerm
    right_var: str
    right: STLCTerm
    _binders = {"left": ("left_var",), "right": ("right_var",)}


@dataclass(frozen=True)
class SLazyPair(STLCTerm):
    """Erased &-pair: both components stay unevaluated."""
    left: STLCTerm
    right: STLCTerm


@dataclass(frozen=True)
class SFst(STLCTerm):
    body: STLCTerm


@dataclass(frozen=True)
class SSnd(STLCTerm):
    body: STLCTerm


@dataclass(frozen=True)
class SUnit(STLCTerm):
    pass


@dataclass(frozen=True)
class SNum(STLCTerm):
    value: int


@dataclass(frozen=True)
class SSucc(STLCTerm):
    body: STLCTerm


@dataclass(frozen=True)
class SNatRec(STLCTerm):
    scrutinee: STLCTerm
    base: STLCTerm
    step: STLCTerm


@dataclass(frozen=True)
class SNil(STLCTerm):
    pass


@dataclass(frozen=True)
class SCons(STLCTerm):
    head: STLCTerm
    tail: STLCTerm


@dataclass(frozen=True)
class SListRec(STLCTerm):
    scrutinee: STLCTerm
    base: STLCTerm
    step: STLCTerm


@dataclass(frozen=True)
class SEmp(STLCTerm):
    pass


@dataclass(frozen=True)
class SNode(STLCTerm):
    label: STLCTerm
    size: STLCTerm
    left: STLCTerm
    right: STLCTerm


@dataclass(frozen=True)
class STreeRec(STLCTerm):
    scrutinee: STLCTerm
    empty: STLCTerm
    leaf: STLCTerm
    left_empty: STLCTerm
    right_empty: STLCTerm
    both: STLCTerm


@dataclass(frozen=True)
class STick(STLCTerm):
    body: STLCTerm


@dataclass(frozen=True)
class SPrim(STLCTerm):
    op: str
    args: Tuple[STLCTerm, ...] = field(default=())


STLC = Syntax(STLCTerm, SVar)


def stlc_is_value(term: STLCTerm) -> bool:
    if isinstance(term, (SLam, SUnit, SNum, SNil, SEmp, SLazyPair)):
        return True
    if isinstance(term, SPair):
        return stlc_is_value(term.left) and stlc_is_value(term.right)
    if isinstance(term, SCons):
        return stlc_is_value(term.head) and stlc_is_value(term.tail)
    if isinstance(term, (SInl, SInr)):
        return stlc_is_value(term.body)
    if isinstance(term, SNode):
        return all(stlc_is_value(t) for t in (term.label, term.size, term.left, term.right))
    return False
