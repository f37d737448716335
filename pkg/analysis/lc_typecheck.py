# analysis/lc_typecheck.py
"""Structural typechecker for λ^C (contexts admit weakening and contraction)."""
from typing import Dict, Iterable, Mapping, Tuple, Union

from analysis.errors import LCTypeError
from data_models.lc_syntax import (
    COST_T, DOLLAR_T, LC_NAT_T, LC_UNIT_T, CAdd, CApp, CCase, CConst, CCons, CEmp, CFst, CInl,
    CInr, CLam, CListRec, CMax, CNatRec, CNeg, CNil, CNode, CNum, CPair, CPrim, CScale, CSnd,
    CSucc, CTreeRec, CUnitVal, CVar, DAdd, DConst, LCArrow, LCList, LCProd, LCSum, LCTerm, LCTree,
    LCType, ToCost, lc_tree_branch_types,
)

LCEnv = Dict[str, LCType]

LC_PRIM_TYPES = {
    "add": ((LC_NAT_T, LC_NAT_T), LC_NAT_T),
    "leq": ((LC_NAT_T, LC_NAT_T), LCSum(LC_UNIT_T, LC_UNIT_T)),
    "phi": ((LC_NAT_T,), LC_NAT_T),
    "dup": ((LC_NAT_T,), LCProd(LC_NAT_T, LC_NAT_T)),
}


def _expect(found: LCType, cls: type, what: str, term: LCTerm):
    if not isinstance(found, cls):
        raise LCTypeError(f"{what}: expected {cls.__name__}, found {found}", term)
    return found


def _same(expected: LCType, found: LCType, what: str, term: LCTerm) -> None:
    if expected != found:
        raise LCTypeError(f"{what}: expected {expected}, found {found}", term)


class LCTypeChecker:
    def infer(self, env: LCEnv, e: LCTerm) -> LCType:
        if isinstance(e, CVar):
            if e.name not in env:
                raise LCTypeError(f"unbound variable '{e.name}'", e)
            return env[e.name]
        if isinstance(e, CLam):
            return LCArrow(e.ty, self.infer({**env, e.var: e.ty}, e.body))
        if isinstance(e, CApp):
            fn = _expect(self.infer(env, e.fn), LCArrow, "application", e)
            _same(fn.arg, self.infer(env, e.arg), "argument", e)
            return fn.res
        if isinstance(e, CPair):
            return LCProd(self.infer(env, e.left), self.infer(env, e.right))
        if isinstance(e, (CFst, CSnd)):
            prod = _expect(self.infer(env, e.body), LCProd, "projection", e)
            return prod.left if isinstance(e, CFst) else prod.right
        if isinstance(e, CInl):
            return LCSum(self.infer(env, e.body), e.other)
        if isinstance(e, CInr):
            return LCSum(e.other, self.infer(env, e.body))
        if isinstance(e, CCase):
            summ = _expect(self.infer(env, e.scrutinee), LCSum, "case scrutinee", e)
            left = self.infer({**env, e.left_var: summ.left}, e.left)
            right = self.infer({**env, e.right_var: summ.right}, e.right)
            _same(left, right, "case branches", e)
            return left
        if isinstance(e, CUnitVal):
            return LC_UNIT_T
        if isinstance(e, CNum):
            return LC_NAT_T
        if isinstance(e, CSucc):
            _same(LC_NAT_T, self.infer(env, e.body), "succ", e)
            return LC_NAT_T
        if isinstance(e, CNatRec):
            _same(LC_NAT_T, self.infer(env, e.scrutinee), "nrec scrutinee", e)
            result = self.infer(env, e.base)
            _same(LCArrow(LCProd(LC_NAT_T, result), result), self.infer(env, e.step), "nrec step", e)
            return result
        if isinstance(e, CNil):
            return LCList(e.elem)
        if isinstance(e, CCons):
            tail = _expect(self.infer(env, e.tail), LCList, "cons tail", e)
            _same(tail.elem, self.infer(env, e.head), "cons head", e)
            return tail
        if isinstance(e, CListRec):
            lst = _expect(self.infer(env, e.scrutinee), LCList, "lrec scrutinee", e)
            result = self.infer(env, e.base)
            step = LCArrow(LCProd(lst.elem, LCProd(lst, result)), result)
            _same(step, self.infer(env, e.step), "lrec step", e)
            return result
        if isinstance(e, CEmp):
            return LCTree(e.elem)
        if isinstance(e, CNode):
            label = self.infer(env, e.label)
            _same(LC_NAT_T, self.infer(env, e.size), "node size", e)
            _same(LCTree(label), self.infer(env, e.left), "node left", e)
            _same(LCTree(label), self.infer(env, e.right), "node right", e)
            return LCTree(label)
        if isinstance(e, CTreeRec):
            tree = _expect(self.infer(env, e.scrutinee), LCTree, "treerec scrutinee", e)
            result = self.infer(env, e.empty)
            expected = lc_tree_branch_types(tree.elem, result)
            branches = (("leaf", e.leaf), ("left_empty", e.left_empty),
                        ("right_empty", e.right_empty), ("both", e.both))
            for (name, branch), ty in zip(branches, expected[1:]):
                _same(ty, self.infer(env, branch), f"treerec {name}", e)
            return result
        if isinstance(e, CConst):
            return COST_T
        if isinstance(e, (CAdd, CMax)):
            _same(COST_T, self.infer(env, e.left), "cost operand", e)
            _same(COST_T, self.infer(env, e.right), "cost operand", e)
            return COST_T
        if isinstance(e, (CScale, CNeg)):
            _same(COST_T, self.infer(env, e.body), "cost operand", e)
            return COST_T
        if isinstance(e, DConst):
            return DOLLAR_T
        if isinstance(e, DAdd):
            _same(DOLLAR_T, self.infer(env, e.left), "$ operand", e)
            _same(DOLLAR_T, self.infer(env, e.right), "$ operand", e)
            return DOLLAR_T
        if isinstance(e, ToCost):
            _same(DOLLAR_T, self.infer(env, e.body), "toC", e)
            return COST_T
        if isinstance(e, CPrim):
            if e.op not in LC_PRIM_TYPES:
                raise LCTypeError(f"unknown primitive '{e.op}'", e)
            params, result = LC_PRIM_TYPES[e.op]
            if len(params) != len(e.args):
                raise LCTypeError(f"'{e.op}' expects {len(params)} arguments", e)
            for param, arg in zip(params, e.args):
                _same(param, self.infer(env, arg), e.op, e)
            return result
        raise LCTypeError(f"not a λ^C term: {type(e).__name__}", e)


def lc_typecheck(ctx: Union[Mapping[str, LCType], Iterable[Tuple[str, LCType]]], e: LCTerm) -> LCType:
    env = dict(ctx.items()) if isinstance(ctx, Mapping) else dict(ctx)
    return LCTypeChecker().infer(env, e)
