# analysis/normalize.py
"""Call-by-need normalization of closed λ^C terms.

Terms evaluate to weak head normal form in an environment of memoized
thunks; ``lc_normalize`` then forces every constructor field, reading
closures back as λ-terms with their environments substituted in.
"""
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from analysis.errors import FuelExhausted, LCTypeError, StuckTerm
from analysis.interp import DEFAULT_FUEL, _raise_recursion_limit, phi
from analysis.lc_typecheck import lc_typecheck
from data_models.extended import INF, ext_add, ext_max, ext_mul, ext_neg
from data_models.lc_syntax import (
    LC, LC_UNIT_T, CAdd, CApp, CCase, CConst, CCons, CEmp, CFst, CInl, CInr, CLam, CListRec, CMax,
    CNatRec, CNeg, CNil, CNode, CNum, CPair, CPrim, CScale, CSnd, CSucc, CTreeRec, CUnitVal, CVar,
    DAdd, DConst, LCTerm, LCType, ToCost,
)


class Thunk:
    """A suspended term and its environment; forced at most once."""

    __slots__ = ("term", "env", "value", "compute")

    def __init__(self, term: LCTerm, env: "Env", value=None, compute: Optional[Callable[[], object]] = None):
        self.term = term
        self.env = env
        self.value = value
        self.compute = compute

    @classmethod
    def ready(cls, value, term: Optional[LCTerm] = None) -> "Thunk":
        return cls(term, {}, value)


Env = Dict[str, Thunk]


# --- weak head normal forms -------------------------------------------------

@dataclass
class VClosure:
    var: str
    ty: LCType
    body: LCTerm
    env: Env


@dataclass
class VPair:
    left: Thunk
    right: Thunk


@dataclass
class VInj:
    is_left: bool
    body: Thunk
    other: LCType


@dataclass
class VUnit:
    pass


@dataclass
class VNum:
    value: object


@dataclass
class VCost:
    value: object


@dataclass
class VDollar:
    value: object


@dataclass
class VNil:
    elem: LCType


@dataclass
class VCons:
    head: Thunk
    tail: Thunk


@dataclass
class VEmp:
    elem: LCType


@dataclass
class VNode:
    label: Thunk
    size: Thunk
    left: Thunk
    right: Thunk


class LCEvaluator:
    def __init__(self, fuel: int = DEFAULT_FUEL):
        self.fuel = fuel
        self._remaining = fuel
        _raise_recursion_limit()

    def force(self, th: Thunk):
        if th.value is None:
            th.value = th.compute() if th.compute is not None else self.whnf(th.term, th.env)
            th.env = {}
            th.compute = None
        return th.value

    def delay(self, term: LCTerm, env: Env) -> Thunk:
        if isinstance(term, CVar) and term.name in env:
            return env[term.name]
        return Thunk(term, env)

    def apply(self, fn: Thunk, arg: Thunk):
        closure = self.force(fn)
        if not isinstance(closure, VClosure):
            raise StuckTerm("app", closure)
        return self.whnf(closure.body, {**closure.env, closure.var: arg})

    def _applied(self, fn: Thunk, arg: Thunk) -> Thunk:
        """A thunk for ``fn arg``; keeps a term form so it can be read back unforced."""
        return Thunk(CApp(CVar("%f"), CVar("%x")), {"%f": fn, "%x": arg})

    def whnf(self, e: LCTerm, env: Env):
        self._remaining -= 1
        if self._remaining < 0:
            raise FuelExhausted(self.fuel)
        if isinstance(e, CVar):
            if e.name not in env:
                raise StuckTerm("var", e)
            return self.force(env[e.name])
        if isinstance(e, CLam):
            return VClosure(e.var, e.ty, e.body, env)
        if isinstance(e, CApp):
            return self.apply(self.delay(e.fn, env), self.delay(e.arg, env))
        if isinstance(e, CPair):
            return VPair(self.delay(e.left, env), self.delay(e.right, env))
        if isinstance(e, (CFst, CSnd)):
            pair = self.whnf(e.body, env)
            if not isinstance(pair, VPair):
                raise StuckTerm("proj", pair)
            return self.force(pair.left if isinstance(e, CFst) else pair.right)
        if isinstance(e, (CInl, CInr)):
            return VInj(isinstance(e, CInl), self.delay(e.body, env), e.other)
        if isinstance(e, CCase):
            scr = self.whnf(e.scrutinee, env)
            if not isinstance(scr, VInj):
                raise StuckTerm("case", scr)
            if scr.is_left:
                return self.whnf(e.left, {**env, e.left_var: scr.body})
            return self.whnf(e.right, {**env, e.right_var: scr.body})
        if isinstance(e, CUnitVal):
            return VUnit()
        if isinstance(e, CNum):
            return VNum(e.value)
        if isinstance(e, CSucc):
            return VNum(ext_add(self._num(e.body, env), 1))
        if isinstance(e, CNatRec):
            return self._nrec(e, env)
        if isinstance(e, CNil):
            return VNil(e.elem)
        if isinstance(e, CCons):
            return VCons(self.delay(e.head, env), self.delay(e.tail, env))
        if isinstance(e, CListRec):
            return self._lrec(e, env)
        if isinstance(e, CEmp):
            return VEmp(e.elem)
        if isinstance(e, CNode):
            return VNode(*(self.delay(t, env) for t in (e.label, e.size, e.left, e.right)))
        if isinstance(e, CTreeRec):
            return self._treerec(e, env)
        if isinstance(e, CConst):
            return VCost(e.value)
        if isinstance(e, CAdd):
            return VCost(ext_add(self._cost(e.left, env), self._cost(e.right, env)))
        if isinstance(e, CMax):
            return VCost(ext_max(self._cost(e.left, env), self._cost(e.right, env)))
        if isinstance(e, CScale):
            return VCost(ext_mul(e.mult, self._cost(e.body, env)))
        if isinstance(e, CNeg):
            return VCost(ext_neg(self._cost(e.body, env)))
        if isinstance(e, DConst):
            return VDollar(e.value)
        if isinstance(e, DAdd):
            return VDollar(ext_add(self._dollar(e.left, env), self._dollar(e.right, env)))
        if isinstance(e, ToCost):
            return VCost(self._dollar(e.body, env))
        if isinstance(e, CPrim):
            return self._prim(e, env)
        raise StuckTerm(type(e).__name__, e)

    def _num(self, e, env):
        v = self.whnf(e, env)
        if not isinstance(v, VNum):
            raise StuckTerm("nat", v)
        return v.value

    def _cost(self, e, env):
        v = self.whnf(e, env)
        if not isinstance(v, VCost):
            raise StuckTerm("cost", v)
        return v.value

    def _dollar(self, e, env):
        v = self.whnf(e, env)
        if not isinstance(v, VDollar):
            raise StuckTerm("$", v)
        return v.value

    # --- recursors -------------------------------------------------------

    def _nrec(self, e: CNatRec, env: Env):
        n = self._num(e.scrutinee, env)
        if n is INF:
            raise StuckTerm("nrec", e)
        step = self.delay(e.step, env)
        acc = self.delay(e.base, env)
        for i in range(n):
            acc = self._applied(step, Thunk.ready(VPair(Thunk.ready(VNum(i), CNum(i)), acc)))
        return self.force(acc)

    def _lrec(self, e: CListRec, env: Env):
        cells: List[VCons] = []
        th = self.delay(e.scrutinee, env)
        v = self.force(th)
        while isinstance(v, VCons):
            cells.append(v)
            v = self.force(v.tail)
        if not isinstance(v, VNil):
            raise StuckTerm("lrec", v)
        step = self.delay(e.step, env)
        acc = self.delay(e.base, env)
        for cell in reversed(cells):
            acc = self._applied(step, Thunk.ready(VPair(cell.head, Thunk.ready(VPair(cell.tail, acc)))))
        return self.force(acc)

    def _treerec(self, e: CTreeRec, env: Env):
        empty, leaf, left_empty, right_empty, both = (
            self.delay(t, env) for t in (e.empty, e.leaf, e.left_empty, e.right_empty, e.both))
        branch_env = {"%e": empty, "%l": leaf, "%le": left_empty, "%re": right_empty, "%b": both}
        quoted = CTreeRec(CVar("%t"), CVar("%e"), CVar("%l"), CVar("%le"), CVar("%re"), CVar("%b"))

        def rec(tree: Thunk) -> Thunk:
            return Thunk(quoted, {**branch_env, "%t": tree}, compute=lambda: run(tree))

        def view(node: VNode) -> Thunk:
            suspended_left = Thunk.ready(VPair(node.left, rec(node.left)))
            suspended_right = Thunk.ready(VPair(node.right, rec(node.right)))
            rest = VPair(node.size, Thunk.ready(VPair(suspended_left, suspended_right)))
            return Thunk.ready(VPair(node.label, Thunk.ready(rest)))

        def run(tree: Thunk):
            node = self.force(tree)
            if isinstance(node, VEmp):
                return self.force(empty)
            if not isinstance(node, VNode):
                raise StuckTerm("treerec", node)
            left, right = self.force(node.left), self.force(node.right)
            head = node.label
            if isinstance(left, VEmp) and isinstance(right, VEmp):
                return self.apply(leaf, Thunk.ready(VPair(head, node.size)))
            if isinstance(left, VEmp):
                arg = VPair(head, Thunk.ready(VPair(node.size, view(right))))
                return self.apply(left_empty, Thunk.ready(arg))
            if isinstance(right, VEmp):
                arg = VPair(head, Thunk.ready(VPair(node.size, view(left))))
                return self.apply(right_empty, Thunk.ready(arg))
            views = Thunk.ready(VPair(view(left), view(right)))
            return self.apply(both, Thunk.ready(VPair(head, Thunk.ready(VPair(node.size, views)))))

        return run(self.delay(e.scrutinee, env))

    def _prim(self, e: CPrim, env: Env):
        args = [self._num(a, env) for a in e.args]
        if e.op == "add":
            return VNum(ext_add(args[0], args[1]))
        if e.op == "leq":
            unit = Thunk.ready(VUnit(), CUnitVal())
            return VInj(args[0] <= args[1], unit, LC_UNIT_T)
        if e.op == "phi":
            return VNum(INF if args[0] is INF else phi(args[0]))
        if e.op == "dup":
            return VPair(Thunk.ready(VNum(args[0])), Thunk.ready(VNum(args[0])))
        raise StuckTerm(e.op, e)

    # --- read-back -------------------------------------------------------

    def readback(self, v) -> LCTerm:
        """Deep normal form of a value; closures are quoted, not normalized under the binder."""
        if isinstance(v, VClosure):
            return self._quote_closure(v)
        if isinstance(v, VPair):
            return CPair(self.readback(self.force(v.left)), self.readback(self.force(v.right)))
        if isinstance(v, VInj):
            body = self.readback(self.force(v.body))
            return CInl(body, v.other) if v.is_left else CInr(body, v.other)
        if isinstance(v, VUnit):
            return CUnitVal()
        if isinstance(v, VNum):
            return CNum(v.value)
        if isinstance(v, VCost):
            return CConst(v.value)
        if isinstance(v, VDollar):
            return DConst(v.value)
        if isinstance(v, VNil):
            return CNil(v.elem)
        if isinstance(v, VCons):
            return CCons(self.readback(self.force(v.head)), self.readback(self.force(v.tail)))
        if isinstance(v, VEmp):
            return CEmp(v.elem)
        if isinstance(v, VNode):
            return CNode(*(self.readback(self.force(t)) for t in (v.label, v.size, v.left, v.right)))
        raise StuckTerm("readback", v)

    def _quote_closure(self, v: VClosure) -> LCTerm:
        body = v.body
        for name in sorted(v.body.free_vars - {v.var}):
            if name in v.env:
                body = LC.substitute(body, name, self._quote(v.env[name]))
        return CLam(v.var, v.ty, body)

    def _quote(self, th: Thunk) -> LCTerm:
        if th.value is not None:
            return self.readback(th.value)
        term = th.term
        for name in sorted(term.free_vars):
            if name in th.env:
                term = LC.substitute(term, name, self._quote(th.env[name]))
        return term


def lc_evaluate(e: LCTerm, fuel: int = DEFAULT_FUEL):
    """Weak head normal form of a closed term."""
    ev = LCEvaluator(fuel)
    return ev, ev.whnf(e, {})


def lc_normalize(e: LCTerm, fuel: int = DEFAULT_FUEL, check: bool = True) -> LCTerm:
    """Canonical form of a closed λ^C term: a constant at base type, constructor-headed otherwise."""
    if check:
        lc_typecheck({}, e)
    ev, value = lc_evaluate(e, fuel)
    return ev.readback(value)


def normalize_cost(e: LCTerm, fuel: int = DEFAULT_FUEL):
    """The ℂ value of a closed cost term."""
    result = lc_normalize(e, fuel)
    if not isinstance(result, CConst):
        raise LCTypeError(f"expected a cost constant, found {result}", e)
    return result.value
