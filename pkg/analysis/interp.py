# analysis/interp.py
"""Cost-instrumented big-step evaluator for closed λ^A terms.

``eval(M)`` returns the value together with (n, r): n counts ticks, r is the
net number of credits created minus spent. Evaluation substitutes closed
values for variables and unrolls recursors on literals, suspending the
recursive call behind a thunk (nrec) or an &-pair (lrec, treerec).
"""
import sys
from typing import List, Optional, Tuple

from analysis.errors import FuelExhausted, InfiniteCreditOverflow, StuckTerm
from data_models.extended import INF
from data_models.la_syntax import (
    UNIT_T, App, Case, Cons, Create, Emp, Fst, Inl, Inr, LATerm, Lam, LetPair, ListRec, NatRec,
    Nil, Node, Num, Pack, Pair, Prim, Save, Snd, Spend, Succ, Tick, Transfer, TreeRec, UnitVal,
    Unpack, Var, WithPair, subst, term_credit_subst,
)
from data_models.reports import CostPair, EvalOutcome, TraceRecord

DEFAULT_FUEL = 2_000_000
MAX_CREDIT_DELTA = 2 ** 63 - 1
RECURSION_LIMIT = 20_000

Result = Tuple[LATerm, int, int]


def _raise_recursion_limit() -> None:
    if sys.getrecursionlimit() < RECURSION_LIMIT:
        sys.setrecursionlimit(RECURSION_LIMIT)


def scale_delta(k, r: int, rule: str) -> int:
    """k·r for a credit delta, refusing ∞·r with r ≠ 0."""
    if r == 0:
        return 0
    if k is INF:
        raise InfiniteCreditOverflow(rule, r)
    out = k * r
    if abs(out) > MAX_CREDIT_DELTA:
        raise InfiniteCreditOverflow(rule, out)
    return out


def credit_amount(credit, rule: str) -> int:
    if not credit.is_closed():
        raise StuckTerm(rule)
    amount = credit.const
    if amount is INF:
        raise InfiniteCreditOverflow(rule, amount)
    return amount


class Evaluator:
    """Big-step evaluation with a step budget and an optional cost trace."""

    def __init__(self, fuel: int = DEFAULT_FUEL, trace: bool = False):
        self.fuel = fuel
        self.trace_enabled = trace
        self._remaining = fuel
        self._trace: List[TraceRecord] = []
        _raise_recursion_limit()
        self._dispatch = {
            Var: self._eval_var, Lam: self._eval_value, UnitVal: self._eval_value,
            Num: self._eval_value, Nil: self._eval_value, Emp: self._eval_value,
            WithPair: self._eval_value, App: self._eval_app, Pair: self._eval_pair,
            LetPair: self._eval_letpair, Inl: self._eval_inj, Inr: self._eval_inj,
            Case: self._eval_case, Fst: self._eval_proj, Snd: self._eval_proj,
            Succ: self._eval_succ, NatRec: self._eval_nrec, Cons: self._eval_cons,
            ListRec: self._eval_lrec, Node: self._eval_node, TreeRec: self._eval_treerec,
            Tick: self._eval_tick, Create: self._eval_create, Spend: self._eval_spend,
            Save: self._eval_save, Transfer: self._eval_transfer, Pack: self._eval_pack,
            Unpack: self._eval_unpack, Prim: self._eval_prim,
        }

    def evaluate(self, term: LATerm) -> EvalOutcome:
        self._remaining = self.fuel
        self._trace = []
        value, n, r = self.eval(term)
        trace = list(self._trace) if self.trace_enabled else None
        return EvalOutcome(value=value, cost=CostPair(n=n, r=r), trace=trace)

    def eval(self, term: LATerm) -> Result:
        self._remaining -= 1
        if self._remaining < 0:
            raise FuelExhausted(self.fuel)
        handler = self._dispatch.get(type(term))
        if handler is None:
            raise StuckTerm(type(term).__name__, term)
        return handler(term)

    def _record(self, rule: str, dn: int, dr: int) -> None:
        if self.trace_enabled:
            self._trace.append(TraceRecord(rule=rule, dn=dn, dr=dr))

    def _apply(self, fn: LATerm, arg: LATerm, rule: str) -> Result:
        if not isinstance(fn, Lam):
            raise StuckTerm(rule, fn)
        return self.eval(subst(fn.body, fn.var, arg))

    @staticmethod
    def _unwrap_step(step: LATerm, rule: str) -> LATerm:
        # recursor steps arrive as save^k_c (λ...) values
        while isinstance(step, Save):
            step = step.body
        if not isinstance(step, Lam):
            raise StuckTerm(rule, step)
        return step

    # --- structural ------------------------------------------------------

    def _eval_var(self, term: Var) -> Result:
        raise StuckTerm("var", term)

    def _eval_value(self, term: LATerm) -> Result:
        return term, 0, 0

    def _eval_app(self, term: App) -> Result:
        fn, n1, r1 = self.eval(term.fn)
        arg, n2, r2 = self.eval(term.arg)
        value, n3, r3 = self._apply(fn, arg, "app")
        return value, n1 + n2 + n3, r1 + r2 + r3

    def _eval_pair(self, term: Pair) -> Result:
        left, n1, r1 = self.eval(term.left)
        right, n2, r2 = self.eval(term.right)
        return Pair(left, right), n1 + n2, r1 + r2

    def _eval_letpair(self, term: LetPair) -> Result:
        pair, n1, r1 = self.eval(term.scrutinee)
        if not isinstance(pair, Pair):
            raise StuckTerm("letp", pair)
        body = subst(subst(term.body, term.left_var, pair.left), term.right_var, pair.right)
        value, n2, r2 = self.eval(body)
        scaled = scale_delta(term.mult, r1, "letp")
        if term.mult != 1:
            self._record("letp", 0, scaled - r1)
        return value, n1 + n2, scaled + r2

    def _eval_inj(self, term) -> Result:
        body, n, r = self.eval(term.body)
        return type(term)(body, term.other), n, r

    def _eval_case(self, term: Case) -> Result:
        scr, n1, r1 = self.eval(term.scrutinee)
        if isinstance(scr, Inl):
            branch = subst(term.left, term.left_var, scr.body)
        elif isinstance(scr, Inr):
            branch = subst(term.right, term.right_var, scr.body)
        else:
            raise StuckTerm("case", scr)
        value, n2, r2 = self.eval(branch)
        scaled = scale_delta(term.mult, r1, "case")
        if term.mult != 1:
            self._record("case", 0, scaled - r1)
        return value, n1 + n2, scaled + r2

    def _eval_proj(self, term) -> Result:
        pair, n1, r1 = self.eval(term.body)
        if not isinstance(pair, WithPair):
            raise StuckTerm("proj", pair)
        chosen = pair.left if isinstance(term, Fst) else pair.right
        value, n2, r2 = self.eval(chosen)
        return value, n1 + n2, r1 + r2

    # --- data ------------------------------------------------------------

    def _eval_succ(self, term: Succ) -> Result:
        num, n, r = self.eval(term.body)
        if not isinstance(num, Num):
            raise StuckTerm("succ", num)
        return Num(num.value + 1), n, r

    def _eval_nrec(self, term: NatRec) -> Result:
        num, n1, r1 = self.eval(term.scrutinee)
        base, n2, r2 = self.eval(term.base)
        step, n3, r3 = self.eval(term.step)
        if not isinstance(num, Num):
            raise StuckTerm("nrec", num)
        if num.value == 0:
            value, n4, r4 = self._apply(base, UnitVal(), "nrec")
        else:
            pred = Num(num.value - 1)
            thunk = Lam("_", UNIT_T, NatRec(pred, base, step))
            value, n4, r4 = self._apply(self._unwrap_step(step, "nrec"), Pair(pred, thunk), "nrec")
        return value, n1 + n2 + n3 + n4, r1 + r2 + r3 + r4

    def _eval_cons(self, term: Cons) -> Result:
        head, n1, r1 = self.eval(term.head)
        tail, n2, r2 = self.eval(term.tail)
        return Cons(head, tail), n1 + n2, r1 + r2

    def _eval_lrec(self, term: ListRec) -> Result:
        lst, n1, r1 = self.eval(term.scrutinee)
        base, n2, r2 = self.eval(term.base)
        step, n3, r3 = self.eval(term.step)
        if isinstance(lst, Nil):
            value, n4, r4 = self._apply(base, UnitVal(), "lrec")
        elif isinstance(lst, Cons):
            rest = WithPair(lst.tail, ListRec(lst.tail, base, step))
            value, n4, r4 = self._apply(self._unwrap_step(step, "lrec"), Pair(lst.head, rest), "lrec")
        else:
            raise StuckTerm("lrec", lst)
        return value, n1 + n2 + n3 + n4, r1 + r2 + r3 + r4

    def _eval_node(self, term: Node) -> Result:
        parts, n, r = [], 0, 0
        for sub in (term.label, term.size, term.left, term.right):
            v, dn, dr = self.eval(sub)
            parts.append(v)
            n, r = n + dn, r + dr
        return Node(*parts), n, r

    def _eval_treerec(self, term: TreeRec) -> Result:
        tree, n, r = self.eval(term.scrutinee)
        branches = []
        for sub in (term.empty, term.leaf, term.left_empty, term.right_empty, term.both):
            v, dn, dr = self.eval(sub)
            branches.append(v)
            n, r = n + dn, r + dr
        empty, leaf, left_empty, right_empty, both = branches

        def view(child: Node) -> LATerm:
            def suspended(sub: LATerm) -> LATerm:
                return WithPair(sub, TreeRec(sub, *branches))
            return Pair(child.label, Pair(child.size, Pair(suspended(child.left), suspended(child.right))))

        if isinstance(tree, Emp):
            value, dn, dr = self._apply(empty, UnitVal(), "treerec")
        elif isinstance(tree, Node):
            left_is_node = isinstance(tree.left, Node)
            right_is_node = isinstance(tree.right, Node)
            if not left_is_node and not right_is_node:
                fn, arg = leaf, Pair(tree.label, tree.size)
            elif not left_is_node:
                fn, arg = left_empty, Pair(tree.label, Pair(tree.size, view(tree.right)))
            elif not right_is_node:
                fn, arg = right_empty, Pair(tree.label, Pair(tree.size, view(tree.left)))
            else:
                fn, arg = both, Pair(tree.label, Pair(tree.size, Pair(view(tree.left), view(tree.right))))
            value, dn, dr = self._apply(self._unwrap_step(fn, "treerec"), arg, "treerec")
        else:
            raise StuckTerm("treerec", tree)
        return value, n + dn, r + dr

    # --- credits ---------------------------------------------------------

    def _eval_tick(self, term: Tick) -> Result:
        value, n, r = self.eval(term.body)
        self._record("tick", 1, 0)
        return value, n + 1, r

    def _eval_create(self, term: Create) -> Result:
        amount = credit_amount(term.credit, "create")
        value, n, r = self.eval(term.body)
        self._record("create", 0, amount)
        return value, n, r + amount

    def _eval_spend(self, term: Spend) -> Result:
        amount = credit_amount(term.credit, "spend")
        value, n, r = self.eval(term.body)
        self._record("spend", 0, -amount)
        return value, n, r - amount

    def _eval_save(self, term: Save) -> Result:
        value, n, r = self.eval(term.body)
        scaled = scale_delta(term.mult, r, "save")
        if scaled != r:
            self._record("save", 0, scaled - r)
        return Save(term.mult, term.credit, value), n, scaled

    def _eval_transfer(self, term: Transfer) -> Result:
        saved, n1, r1 = self.eval(term.scrutinee)
        if not isinstance(saved, Save):
            raise StuckTerm("transfer", saved)
        value, n2, r2 = self.eval(subst(term.body, term.var, saved.body))
        scaled = scale_delta(term.mult, r1, "transfer")
        if scaled != r1:
            self._record("transfer", 0, scaled - r1)
        return value, n1 + n2, scaled + r2

    def _eval_pack(self, term: Pack) -> Result:
        value, n, r = self.eval(term.body)
        return Pack(term.credit, term.ty, value), n, r

    def _eval_unpack(self, term: Unpack) -> Result:
        packed, n1, r1 = self.eval(term.scrutinee)
        if not isinstance(packed, Pack):
            raise StuckTerm("unpack", packed)
        body = term_credit_subst(term.body, term.credit_var, packed.credit)
        value, n2, r2 = self.eval(subst(body, term.var, packed.body))
        return value, n1 + n2, r1 + r2

    def _eval_prim(self, term: Prim) -> Result:
        args, n, r = [], 0, 0
        for sub in term.args:
            v, dn, dr = self.eval(sub)
            if not isinstance(v, Num):
                raise StuckTerm(term.op, v)
            args.append(v.value)
            n, r = n + dn, r + dr
        return prim_value(term.op, args), n, r


def phi(m: int) -> int:
    """⌈lg(m+1)⌉."""
    return int(m).bit_length()


def prim_value(op: str, args: List[int]) -> LATerm:
    if op == "add":
        return Num(args[0] + args[1])
    if op == "leq":
        return Inl(UnitVal(), UNIT_T) if args[0] <= args[1] else Inr(UnitVal(), UNIT_T)
    if op == "phi":
        return Num(phi(args[0]))
    if op == "dup":
        return Pair(Num(args[0]), Num(args[0]))
    raise StuckTerm(op)


def evaluate(term: LATerm, fuel: int = DEFAULT_FUEL, trace: bool = False) -> EvalOutcome:
    return Evaluator(fuel=fuel, trace=trace).evaluate(term)


def run(term: LATerm, fuel: Optional[int] = None) -> Tuple[LATerm, int, int]:
    outcome = Evaluator(fuel=fuel or DEFAULT_FUEL).evaluate(term)
    return outcome.value, outcome.cost.n, outcome.cost.r
