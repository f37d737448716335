# analysis/erase.py
"""Erasure of λ^A to a plain tick-counting λ-calculus.

The credit constructors vanish, transfer and unpack become lets, and any
subterm of erased type 1 that cannot tick is replaced by ``()``. Erasure runs
on the typing derivation so each subterm's type is at hand.
"""
from typing import Dict, Optional, Tuple, Union

from analysis.errors import FuelExhausted, StuckTerm
from analysis.interp import DEFAULT_FUEL, _raise_recursion_limit, phi
from analysis.typecheck import EMPTY_CONTEXT, Derivation, TypeChecker, TypingContext
from data_models.la_syntax import (
    LAType, LATerm, TBang, TExists, TList, TLolli, TSum, TTensor, TTree, TUnit, TWith,
    contains_tick,
)
from data_models.stlc_syntax import (
    STLC, SApp, SCase, SCons, SEmp, SFst, SInl, SInr, SLam, SLazyPair, SLet, SLetPair, SListRec,
    SNatRec, SNil, SNode, SNum, SPair, SPrim, SSnd, SSucc, STLCTerm, STick, STreeRec, SUnit, SVar,
)


def erase_type(ty: LAType) -> LAType:
    """Drop ! and ∃; every other connective maps to itself."""
    if isinstance(ty, (TBang, TExists)):
        return erase_type(ty.body)
    if isinstance(ty, TLolli):
        return TLolli(erase_type(ty.arg), erase_type(ty.res))
    if isinstance(ty, (TTensor, TSum, TWith)):
        return type(ty)(erase_type(ty.left), erase_type(ty.right))
    if isinstance(ty, (TList, TTree)):
        return type(ty)(erase_type(ty.elem))
    return ty


def is_code_free(ty: LAType) -> bool:
    """True when values of this type carry no suspended computation."""
    if isinstance(ty, (TLolli, TWith)):
        return False
    if isinstance(ty, (TBang, TExists)):
        return is_code_free(ty.body)
    if isinstance(ty, (TTensor, TSum)):
        return is_code_free(ty.left) and is_code_free(ty.right)
    if isinstance(ty, (TList, TTree)):
        return is_code_free(ty.elem)
    return True


class Eraser:
    def __init__(self, ghost_elimination: bool = True):
        self.ghost_elimination = ghost_elimination

    def erase(self, d: Derivation, env: Dict[str, LAType]) -> STLCTerm:
        if self.ghost_elimination and self._is_ghost(d, env):
            return SUnit()
        return getattr(self, f"_erase_{d.rule}")(d, env)

    def _is_ghost(self, d: Derivation, env: Dict[str, LAType]) -> bool:
        if not isinstance(erase_type(d.type), TUnit):
            return False
        if contains_tick(d.term):
            return False
        return all(is_code_free(env[x]) for x in d.term.free_vars if x in env)

    # --- structural ----------------------------------------------------

    def _erase_var(self, d, env):
        return SVar(d.term.name)

    def _erase_lam(self, d, env):
        t = d.term
        body = self.erase(d.children[0], {**env, t.var: t.ty})
        return SLam(t.var, erase_type(t.ty), body)

    def _erase_app(self, d, env):
        fn, arg = d.children
        return SApp(self.erase(fn, env), self.erase(arg, env))

    def _erase_pair(self, d, env):
        left, right = d.children
        return SPair(self.erase(left, env), self.erase(right, env))

    def _erase_letp(self, d, env):
        t = d.term
        scr, body = d.children
        inner = {**env, t.left_var: scr.type.left, t.right_var: scr.type.right}
        return SLetPair(t.left_var, t.right_var, self.erase(scr, env), self.erase(body, inner))

    def _erase_inl(self, d, env):
        return SInl(self.erase(d.children[0], env))

    def _erase_inr(self, d, env):
        return SInr(self.erase(d.children[0], env))

    def _erase_case(self, d, env):
        t = d.term
        scr, left, right = d.children
        return SCase(
            self.erase(scr, env),
            t.left_var, self.erase(left, {**env, t.left_var: scr.type.left}),
            t.right_var, self.erase(right, {**env, t.right_var: scr.type.right}),
        )

    def _erase_with(self, d, env):
        left, right = d.children
        return SLazyPair(self.erase(left, env), self.erase(right, env))

    def _erase_fst(self, d, env):
        return SFst(self.erase(d.children[0], env))

    def _erase_snd(self, d, env):
        return SSnd(self.erase(d.children[0], env))

    def _erase_unit(self, d, env):
        return SUnit()

    # --- data ----------------------------------------------------------

    def _erase_num(self, d, env):
        return SNum(d.term.value)

    def _erase_succ(self, d, env):
        return SSucc(self.erase(d.children[0], env))

    def _erase_nrec(self, d, env):
        return SNatRec(*(self.erase(c, env) for c in d.children))

    def _erase_nil(self, d, env):
        return SNil()

    def _erase_cons(self, d, env):
        head, tail = d.children
        return SCons(self.erase(head, env), self.erase(tail, env))

    def _erase_lrec(self, d, env):
        return SListRec(*(self.erase(c, env) for c in d.children))

    def _erase_emp(self, d, env):
        return SEmp()

    def _erase_node(self, d, env):
        return SNode(*(self.erase(c, env) for c in d.children))

    def _erase_treerec(self, d, env):
        return STreeRec(*(self.erase(c, env) for c in d.children))

    def _erase_prim(self, d, env):
        return SPrim(d.term.op, tuple(self.erase(c, env) for c in d.children))

    # --- credits -------------------------------------------------------

    def _erase_tick(self, d, env):
        return STick(self.erase(d.children[0], env))

    def _erase_body(self, d, env):
        return self.erase(d.children[0], env)

    _erase_create = _erase_spend = _erase_save = _erase_pack = _erase_body

    def _erase_transfer(self, d, env):
        scr, body = d.children
        return SLet(d.term.var, self.erase(scr, env), self.erase(body, {**env, d.term.var: scr.type.body}))

    def _erase_unpack(self, d, env):
        scr, body = d.children
        # the body's own context binds x at the opened type; the erased type ignores credits
        inner = {**env, d.term.var: scr.type.body}
        return SLet(d.term.var, self.erase(scr, env), self.erase(body, inner))


def erase(source: Union[Derivation, LATerm], ctx: TypingContext = EMPTY_CONTEXT,
          ghost_elimination: bool = True) -> STLCTerm:
    """Erase a derivation, or a term typed under ``ctx``."""
    d = source if isinstance(source, Derivation) else TypeChecker().derive(ctx, source)
    env = dict(ctx.term_vars)
    return Eraser(ghost_elimination).erase(d, env)


# ---------------------------------------------------------------------------
# Evaluation of erased terms
# ---------------------------------------------------------------------------

class STLCEvaluator:
    """Call-by-value big-step evaluation counting ticks."""

    def __init__(self, fuel: int = DEFAULT_FUEL):
        self.fuel = fuel
        self._remaining = fuel
        _raise_recursion_limit()

    def run(self, term: STLCTerm) -> Tuple[STLCTerm, int]:
        self._remaining = self.fuel
        return self.eval(term)

    def eval(self, t: STLCTerm) -> Tuple[STLCTerm, int]:
        self._remaining -= 1
        if self._remaining < 0:
            raise FuelExhausted(self.fuel)
        if isinstance(t, (SLam, SUnit, SNum, SNil, SEmp, SLazyPair)):
            return t, 0
        if isinstance(t, SVar):
            raise StuckTerm("var", t)
        if isinstance(t, SApp):
            fn, n1 = self.eval(t.fn)
            arg, n2 = self.eval(t.arg)
            value, n3 = self._apply(fn, arg, "app")
            return value, n1 + n2 + n3
        if isinstance(t, SLet):
            bound, n1 = self.eval(t.bound)
            value, n2 = self.eval(STLC.substitute(t.body, t.var, bound))
            return value, n1 + n2
        if isinstance(t, SPair):
            left, n1 = self.eval(t.left)
            right, n2 = self.eval(t.right)
            return SPair(left, right), n1 + n2
        if isinstance(t, SLetPair):
            pair, n1 = self.eval(t.scrutinee)
            if not isinstance(pair, SPair):
                raise StuckTerm("letp", pair)
            body = STLC.substitute_many(t.body, ((t.left_var, pair.left), (t.right_var, pair.right)))
            value, n2 = self.eval(body)
            return value, n1 + n2
        if isinstance(t, (SInl, SInr)):
            body, n = self.eval(t.body)
            return type(t)(body), n
        if isinstance(t, SCase):
            scr, n1 = self.eval(t.scrutinee)
            if isinstance(scr, SInl):
                branch = STLC.substitute(t.left, t.left_var, scr.body)
            elif isinstance(scr, SInr):
                branch = STLC.substitute(t.right, t.right_var, scr.body)
            else:
                raise StuckTerm("case", scr)
            value, n2 = self.eval(branch)
            return value, n1 + n2
        if isinstance(t, (SFst, SSnd)):
            pair, n1 = self.eval(t.body)
            if not isinstance(pair, SLazyPair):
                raise StuckTerm("proj", pair)
            value, n2 = self.eval(pair.left if isinstance(t, SFst) else pair.right)
            return value, n1 + n2
        if isinstance(t, SSucc):
            num, n = self.eval(t.body)
            if not isinstance(num, SNum):
                raise StuckTerm("succ", num)
            return SNum(num.value + 1), n
        if isinstance(t, SCons):
            head, n1 = self.eval(t.head)
            tail, n2 = self.eval(t.tail)
            return SCons(head, tail), n1 + n2
        if isinstance(t, SNode):
            parts, n = [], 0
            for sub in (t.label, t.size, t.left, t.right):
                v, dn = self.eval(sub)
                parts.append(v)
                n += dn
            return SNode(*parts), n
        if isinstance(t, STick):
            value, n = self.eval(t.body)
            return value, n + 1
        if isinstance(t, SNatRec):
            return self._nrec(t)
        if isinstance(t, SListRec):
            return self._lrec(t)
        if isinstance(t, STreeRec):
            return self._treerec(t)
        if isinstance(t, SPrim):
            return self._prim(t)
        raise StuckTerm(type(t).__name__, t)

    def _apply(self, fn: STLCTerm, arg: STLCTerm, rule: str) -> Tuple[STLCTerm, int]:
        if not isinstance(fn, SLam):
            raise StuckTerm(rule, fn)
        return self.eval(STLC.substitute(fn.body, fn.var, arg))

    def _eval_all(self, terms):
        values, n = [], 0
        for sub in terms:
            v, dn = self.eval(sub)
            values.append(v)
            n += dn
        return values, n

    def _nrec(self, t: SNatRec):
        (num, base, step), n = self._eval_all((t.scrutinee, t.base, t.step))
        if not isinstance(num, SNum):
            raise StuckTerm("nrec", num)
        if num.value == 0:
            value, dn = self._apply(base, SUnit(), "nrec")
        else:
            pred = SNum(num.value - 1)
            value, dn = self._apply(step, SPair(pred, SLam("_", None, SNatRec(pred, base, step))), "nrec")
        return value, n + dn

    def _lrec(self, t: SListRec):
        (lst, base, step), n = self._eval_all((t.scrutinee, t.base, t.step))
        if isinstance(lst, SNil):
            value, dn = self._apply(base, SUnit(), "lrec")
        elif isinstance(lst, SCons):
            rest = SLazyPair(lst.tail, SListRec(lst.tail, base, step))
            value, dn = self._apply(step, SPair(lst.head, rest), "lrec")
        else:
            raise StuckTerm("lrec", lst)
        return value, n + dn

    def _treerec(self, t: STreeRec):
        values, n = self._eval_all((t.scrutinee, t.empty, t.leaf, t.left_empty, t.right_empty, t.both))
        tree, branches = values[0], values[1:]
        empty, leaf, left_empty, right_empty, both = branches

        def view(child: SNode) -> STLCTerm:
            def suspended(sub):
                return SLazyPair(sub, STreeRec(sub, *branches))
            return SPair(child.label, SPair(child.size, SPair(suspended(child.left), suspended(child.right))))

        if isinstance(tree, SEmp):
            value, dn = self._apply(empty, SUnit(), "treerec")
        elif isinstance(tree, SNode):
            left_is_node = isinstance(tree.left, SNode)
            right_is_node = isinstance(tree.right, SNode)
            if not left_is_node and not right_is_node:
                fn, arg = leaf, SPair(tree.label, tree.size)
            elif not left_is_node:
                fn, arg = left_empty, SPair(tree.label, SPair(tree.size, view(tree.right)))
            elif not right_is_node:
                fn, arg = right_empty, SPair(tree.label, SPair(tree.size, view(tree.left)))
            else:
                fn, arg = both, SPair(tree.label, SPair(tree.size, SPair(view(tree.left), view(tree.right))))
            value, dn = self._apply(fn, arg, "treerec")
        else:
            raise StuckTerm("treerec", tree)
        return value, n + dn

    def _prim(self, t: SPrim):
        values, n = self._eval_all(t.args)
        args = []
        for v in values:
            if not isinstance(v, SNum):
                raise StuckTerm(t.op, v)
            args.append(v.value)
        if t.op == "add":
            return SNum(args[0] + args[1]), n
        if t.op == "leq":
            return (SInl(SUnit()) if args[0] <= args[1] else SInr(SUnit())), n
        if t.op == "phi":
            return SNum(phi(args[0])), n
        if t.op == "dup":
            return SPair(SNum(args[0]), SNum(args[0])), n
        raise StuckTerm(t.op, t)


def eval_stlc(term: STLCTerm, fuel: Optional[int] = None) -> Tuple[STLCTerm, int]:
    return STLCEvaluator(fuel or DEFAULT_FUEL).run(term)
