# analysis/typecheck.py
"""Minimal-resource synthesis for λ^A and the checking wrapper.

Each rule computes the conclusion's resource term from its premises:
multiplicative rules add, additive rules take the pointwise maximum, and the
credit rules move the bank. ``check`` then applies resource weakening.
"""
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from analysis.errors import (
    IllFormedCredit, InsufficientResources, NonPositiveMultiplicity, TypeMismatch, UnboundVariable,
)
from data_models.binding import fresh_name
from data_models.credits import CreditTerm, ResourceTerm, ZERO_RESOURCES
from data_models.extended import INF, ext_mul
from data_models.la_syntax import (
    NAT_T, UNIT_T, App, Case, Cons, Create, Emp, Fst, Inl, Inr, LAType, LATerm, Lam, LetPair,
    ListRec, NatRec, Nil, Node, Num, Pack, Pair, Prim, Save, Snd, Spend, Succ, TBang, TExists,
    TLolli, TList, TNat, TSum, TTensor, TTree, TWith, Tick, Transfer, TreeRec, UnitVal, Unpack,
    Var, WithPair, list_branch_types, nat_branch_types, term_credit_subst, tree_branch_types,
    type_credit_subst, type_credit_vars, type_equal,
)


@dataclass(frozen=True)
class TypingContext:
    """Δ | Γ: credit variables in scope and typed term variables."""
    credit_vars: Tuple[str, ...] = ()
    term_vars: Tuple[Tuple[str, LAType], ...] = ()

    def lookup(self, name: str) -> Optional[LAType]:
        for bound, ty in reversed(self.term_vars):
            if bound == name:
                return ty
        return None

    def extend(self, name: str, ty: LAType) -> "TypingContext":
        return TypingContext(self.credit_vars, self.term_vars + ((name, ty),))

    def extend_credit(self, alpha: str) -> "TypingContext":
        return TypingContext(self.credit_vars + (alpha,), self.term_vars)

    @classmethod
    def of(cls, *bindings: Tuple[str, LAType], credit_vars=()) -> "TypingContext":
        return cls(tuple(credit_vars), tuple(bindings))


EMPTY_CONTEXT = TypingContext()


@dataclass(frozen=True)
class Derivation:
    rule: str
    term: LATerm
    type: LAType
    resources: ResourceTerm
    children: Tuple["Derivation", ...] = ()
    # names this rule binds after any renaming (unpack's credit variable)
    binders: Tuple[str, ...] = field(default=())


@dataclass(frozen=True)
class TypingResult:
    type: LAType
    resources: ResourceTerm
    derivation: Derivation


PRIM_RESULT = {
    "add": NAT_T,
    "leq": TSum(UNIT_T, UNIT_T),
    "phi": NAT_T,
    "dup": TTensor(NAT_T, NAT_T),
}


class TypeChecker:
    _dispatch: Dict[type, str] = {
        Var: "_rule_var", Lam: "_rule_lam", App: "_rule_app", Pair: "_rule_pair",
        LetPair: "_rule_letpair", Inl: "_rule_inl", Inr: "_rule_inr", Case: "_rule_case",
        WithPair: "_rule_with", Fst: "_rule_fst", Snd: "_rule_snd", UnitVal: "_rule_unit",
        Num: "_rule_num", Succ: "_rule_succ", NatRec: "_rule_nrec", Nil: "_rule_nil",
        Cons: "_rule_cons", ListRec: "_rule_lrec", Emp: "_rule_emp", Node: "_rule_node",
        TreeRec: "_rule_treerec", Tick: "_rule_tick", Create: "_rule_create",
        Spend: "_rule_spend", Save: "_rule_save", Transfer: "_rule_transfer",
        Pack: "_rule_pack", Unpack: "_rule_unpack", Prim: "_rule_prim",
    }

    def synthesize(self, ctx: TypingContext, term: LATerm) -> TypingResult:
        d = self.derive(ctx, term)
        return TypingResult(d.type, d.resources, d)

    def check(self, ctx: TypingContext, available: ResourceTerm, term: LATerm, ty: LAType) -> Derivation:
        d = self.derive(ctx, term)
        if not type_equal(d.type, ty):
            raise TypeMismatch("check", "result", ty, d.type)
        if not d.resources.leq(available):
            raise InsufficientResources(d.resources, available, d.resources.monus(available))
        return d

    def derive(self, ctx: TypingContext, term: LATerm) -> Derivation:
        method = self._dispatch.get(type(term))
        if method is None:
            raise TypeMismatch("synthesize", type(term).__name__)
        return getattr(self, method)(ctx, term)

    # --- helpers -----------------------------------------------------------

    @staticmethod
    def _expect(ty: LAType, cls: type, rule: str, position: str):
        if not isinstance(ty, cls):
            raise TypeMismatch(rule, position, cls.__name__, ty)
        return ty

    @staticmethod
    def _same(expected: LAType, found: LAType, rule: str, position: str):
        if not type_equal(expected, found):
            raise TypeMismatch(rule, position, expected, found)

    @staticmethod
    def _check_mult(rule: str, mult) -> None:
        if mult is INF:
            return
        if isinstance(mult, bool) or not isinstance(mult, int) or mult < 1:
            raise NonPositiveMultiplicity(rule, mult)

    @staticmethod
    def _check_credit(ctx: TypingContext, credit: CreditTerm, scope=()) -> None:
        unknown = credit.free_vars - set(ctx.credit_vars) - set(scope)
        if unknown:
            raise IllFormedCredit(credit, f"credit variable '{sorted(unknown)[0]}' not in scope")

    def _check_type(self, ctx: TypingContext, ty: LAType, scope=()) -> None:
        if isinstance(ty, TBang):
            self._check_mult("!", ty.mult)
            self._check_credit(ctx, ty.credit, scope)
            self._check_type(ctx, ty.body, scope)
        elif isinstance(ty, TExists):
            self._check_type(ctx, ty.body, tuple(scope) + (ty.var,))
        elif isinstance(ty, (TList, TTree)):
            self._check_type(ctx, ty.elem, scope)
        elif isinstance(ty, TLolli):
            self._check_type(ctx, ty.arg, scope)
            self._check_type(ctx, ty.res, scope)
        elif isinstance(ty, (TTensor, TSum, TWith)):
            self._check_type(ctx, ty.left, scope)
            self._check_type(ctx, ty.right, scope)

    @staticmethod
    def _bind(resources: ResourceTerm, name: str, limit, rule: str) -> ResourceTerm:
        used = resources.coefficient(name)
        if not used <= limit:
            deficit = ResourceTerm.single(name, INF if used is INF else used - limit)
            raise InsufficientResources(ResourceTerm.single(name, used), ResourceTerm.single(name, limit), deficit, rule)
        return resources.without(name)

    # --- structural rules --------------------------------------------------

    def _rule_var(self, ctx, term: Var) -> Derivation:
        ty = ctx.lookup(term.name)
        if ty is None:
            raise UnboundVariable(term.name)
        return Derivation("var", term, ty, ResourceTerm.single(term.name))

    def _rule_lam(self, ctx, term: Lam) -> Derivation:
        self._check_type(ctx, term.ty)
        body = self.derive(ctx.extend(term.var, term.ty), term.body)
        res = self._bind(body.resources, term.var, 1, "lam")
        return Derivation("lam", term, TLolli(term.ty, body.type), res, (body,))

    def _rule_app(self, ctx, term: App) -> Derivation:
        fn = self.derive(ctx, term.fn)
        arrow = self._expect(fn.type, TLolli, "app", "function")
        arg = self.derive(ctx, term.arg)
        self._same(arrow.arg, arg.type, "app", "argument")
        return Derivation("app", term, arrow.res, fn.resources.plus(arg.resources), (fn, arg))

    def _rule_pair(self, ctx, term: Pair) -> Derivation:
        left = self.derive(ctx, term.left)
        right = self.derive(ctx, term.right)
        return Derivation("pair", term, TTensor(left.type, right.type),
                          left.resources.plus(right.resources), (left, right))

    def _rule_letpair(self, ctx, term: LetPair) -> Derivation:
        self._check_mult("letp", term.mult)
        scr = self.derive(ctx, term.scrutinee)
        tensor = self._expect(scr.type, TTensor, "letp", "scrutinee")
        inner = ctx.extend(term.left_var, tensor.left).extend(term.right_var, tensor.right)
        body = self.derive(inner, term.body)
        g = self._bind(body.resources, term.right_var, term.mult, "letp")
        g = self._bind(g, term.left_var, term.mult, "letp")
        return Derivation("letp", term, body.type, scr.resources.scale(term.mult).plus(g), (scr, body))

    def _rule_inl(self, ctx, term: Inl) -> Derivation:
        self._check_type(ctx, term.other)
        body = self.derive(ctx, term.body)
        return Derivation("inl", term, TSum(body.type, term.other), body.resources, (body,))

    def _rule_inr(self, ctx, term: Inr) -> Derivation:
        self._check_type(ctx, term.other)
        body = self.derive(ctx, term.body)
        return Derivation("inr", term, TSum(term.other, body.type), body.resources, (body,))

    def _rule_case(self, ctx, term: Case) -> Derivation:
        self._check_mult("case", term.mult)
        scr = self.derive(ctx, term.scrutinee)
        summ = self._expect(scr.type, TSum, "case", "scrutinee")
        left = self.derive(ctx.extend(term.left_var, summ.left), term.left)
        right = self.derive(ctx.extend(term.right_var, summ.right), term.right)
        self._same(left.type, right.type, "case", "branches")
        g = self._bind(left.resources, term.left_var, term.mult, "case").join(
            self._bind(right.resources, term.right_var, term.mult, "case"))
        return Derivation("case", term, left.type, scr.resources.scale(term.mult).plus(g), (scr, left, right))

    def _rule_with(self, ctx, term: WithPair) -> Derivation:
        left = self.derive(ctx, term.left)
        right = self.derive(ctx, term.right)
        return Derivation("with", term, TWith(left.type, right.type),
                          left.resources.join(right.resources), (left, right))

    def _rule_fst(self, ctx, term: Fst) -> Derivation:
        body = self.derive(ctx, term.body)
        w = self._expect(body.type, TWith, "fst", "argument")
        return Derivation("fst", term, w.left, body.resources, (body,))

    def _rule_snd(self, ctx, term: Snd) -> Derivation:
        body = self.derive(ctx, term.body)
        w = self._expect(body.type, TWith, "snd", "argument")
        return Derivation("snd", term, w.right, body.resources, (body,))

    def _rule_unit(self, ctx, term: UnitVal) -> Derivation:
        return Derivation("unit", term, UNIT_T, ZERO_RESOURCES)

    # --- data --------------------------------------------------------------

    def _rule_num(self, ctx, term: Num) -> Derivation:
        if term.value < 0:
            raise TypeMismatch("num", "literal", "natural number", term.value)
        return Derivation("num", term, NAT_T, ZERO_RESOURCES)

    def _rule_succ(self, ctx, term: Succ) -> Derivation:
        body = self.derive(ctx, term.body)
        self._expect(body.type, TNat, "succ", "argument")
        return Derivation("succ", term, NAT_T, body.resources, (body,))

    def _recursor_base(self, ctx, rule: str, base_term: LATerm) -> Tuple[Derivation, LAType]:
        base = self.derive(ctx, base_term)
        arrow = self._expect(base.type, TLolli, rule, "base")
        self._same(UNIT_T, arrow.arg, rule, "base")
        return base, arrow.res

    def _rule_nrec(self, ctx, term: NatRec) -> Derivation:
        scr = self.derive(ctx, term.scrutinee)
        self._expect(scr.type, TNat, "nrec", "scrutinee")
        base, result = self._recursor_base(ctx, "nrec", term.base)
        step = self.derive(ctx, term.step)
        self._same(nat_branch_types(result)[1], step.type, "nrec", "step")
        res = scr.resources.plus(base.resources).plus(step.resources)
        return Derivation("nrec", term, result, res, (scr, base, step))

    def _rule_nil(self, ctx, term: Nil) -> Derivation:
        self._check_type(ctx, term.elem)
        return Derivation("nil", term, TList(term.elem), ZERO_RESOURCES)

    def _rule_cons(self, ctx, term: Cons) -> Derivation:
        head = self.derive(ctx, term.head)
        tail = self.derive(ctx, term.tail)
        lst = self._expect(tail.type, TList, "cons", "tail")
        self._same(lst.elem, head.type, "cons", "head")
        return Derivation("cons", term, lst, head.resources.plus(tail.resources), (head, tail))

    def _rule_lrec(self, ctx, term: ListRec) -> Derivation:
        scr = self.derive(ctx, term.scrutinee)
        lst = self._expect(scr.type, TList, "lrec", "scrutinee")
        base, result = self._recursor_base(ctx, "lrec", term.base)
        step = self.derive(ctx, term.step)
        self._same(list_branch_types(lst.elem, result)[1], step.type, "lrec", "step")
        res = scr.resources.plus(base.resources).plus(step.resources)
        return Derivation("lrec", term, result, res, (scr, base, step))

    def _rule_emp(self, ctx, term: Emp) -> Derivation:
        self._check_type(ctx, term.elem)
        return Derivation("emp", term, TTree(term.elem), ZERO_RESOURCES)

    def _rule_node(self, ctx, term: Node) -> Derivation:
        label = self.derive(ctx, term.label)
        size = self.derive(ctx, term.size)
        self._expect(size.type, TNat, "node", "size")
        left = self.derive(ctx, term.left)
        right = self.derive(ctx, term.right)
        for position, sub in (("left", left), ("right", right)):
            tree = self._expect(sub.type, TTree, "node", position)
            self._same(tree.elem, label.type, "node", position)
        res = label.resources.plus(size.resources).plus(left.resources).plus(right.resources)
        return Derivation("node", term, TTree(label.type), res, (label, size, left, right))

    def _rule_treerec(self, ctx, term: TreeRec) -> Derivation:
        scr = self.derive(ctx, term.scrutinee)
        tree = self._expect(scr.type, TTree, "treerec", "scrutinee")
        empty, result = self._recursor_base(ctx, "treerec", term.empty)
        expected = tree_branch_types(tree.elem, result)
        children = [scr, empty]
        res = scr.resources.plus(empty.resources)
        branches = (("leaf", term.leaf), ("left_empty", term.left_empty),
                    ("right_empty", term.right_empty), ("both", term.both))
        for (position, branch), ty in zip(branches, expected[1:]):
            d = self.derive(ctx, branch)
            self._same(ty, d.type, "treerec", position)
            children.append(d)
            res = res.plus(d.resources)
        return Derivation("treerec", term, result, res, tuple(children))

    # --- credits -----------------------------------------------------------

    def _rule_tick(self, ctx, term: Tick) -> Derivation:
        body = self.derive(ctx, term.body)
        return Derivation("tick", term, body.type, body.resources, (body,))

    def _rule_create(self, ctx, term: Create) -> Derivation:
        self._check_credit(ctx, term.credit)
        body = self.derive(ctx, term.body)
        res = body.resources.with_bank(body.resources.bank.monus(term.credit))
        return Derivation("create", term, body.type, res, (body,))

    def _rule_spend(self, ctx, term: Spend) -> Derivation:
        self._check_credit(ctx, term.credit)
        body = self.derive(ctx, term.body)
        res = body.resources.with_bank(body.resources.bank.plus(term.credit))
        return Derivation("spend", term, body.type, res, (body,))

    def _rule_save(self, ctx, term: Save) -> Derivation:
        self._check_mult("save", term.mult)
        self._check_credit(ctx, term.credit)
        body = self.derive(ctx, term.body)
        res = body.resources.scale(term.mult).plus(ResourceTerm.of_bank(term.credit))
        return Derivation("save", term, TBang(term.mult, term.credit, body.type), res, (body,))

    def _rule_transfer(self, ctx, term: Transfer) -> Derivation:
        self._check_mult("transfer", term.mult)
        scr = self.derive(ctx, term.scrutinee)
        bang = self._expect(scr.type, TBang, "transfer", "scrutinee")
        body = self.derive(ctx.extend(term.var, bang.body), term.body)
        g = self._bind(body.resources, term.var, ext_mul(bang.mult, term.mult), "transfer")
        g = g.with_bank(g.bank.monus(bang.credit.scale(term.mult)))
        return Derivation("transfer", term, body.type, scr.resources.scale(term.mult).plus(g), (scr, body))

    def _rule_pack(self, ctx, term: Pack) -> Derivation:
        self._check_credit(ctx, term.credit)
        ex = self._expect(term.ty, TExists, "pack", "annotation")
        self._check_type(ctx, ex)
        body = self.derive(ctx, term.body)
        self._same(type_credit_subst(ex.body, ex.var, term.credit), body.type, "pack", "body")
        return Derivation("pack", term, ex, body.resources, (body,))

    def _rule_unpack(self, ctx, term: Unpack) -> Derivation:
        scr = self.derive(ctx, term.scrutinee)
        ex = self._expect(scr.type, TExists, "unpack", "scrutinee")
        alpha, body_term = term.credit_var, term.body
        if alpha in ctx.credit_vars:
            renamed = fresh_name(alpha, set(ctx.credit_vars) | body_term.credit_vars)
            body_term = term_credit_subst(body_term, alpha, CreditTerm.var(renamed))
            alpha = renamed
        inner_ty = type_credit_subst(ex.body, ex.var, CreditTerm.var(alpha))
        body = self.derive(ctx.extend_credit(alpha).extend(term.var, inner_ty), body_term)
        if alpha in type_credit_vars(body.type):
            raise IllFormedCredit(CreditTerm.var(alpha), "unpacked credit variable escapes into the result type")
        g = self._bind(body.resources, term.var, 1, "unpack")
        if alpha in g.bank.free_vars:
            raise IllFormedCredit(g.bank, "unpacked credit variable escapes into the resources")
        return Derivation("unpack", term, body.type, scr.resources.plus(g), (scr, body), (alpha,))

    def _rule_prim(self, ctx, term: Prim) -> Derivation:
        args = tuple(self.derive(ctx, a) for a in term.args)
        res = ZERO_RESOURCES
        for i, d in enumerate(args):
            self._expect(d.type, TNat, term.op, f"argument {i + 1}")
            res = res.plus(d.resources)
        return Derivation("prim", term, PRIM_RESULT[term.op], res, args)


_DEFAULT = TypeChecker()


def synthesize(ctx: TypingContext, term: LATerm) -> TypingResult:
    return _DEFAULT.synthesize(ctx, term)


def check(ctx: TypingContext, available: ResourceTerm, term: LATerm, ty: LAType) -> Derivation:
    return _DEFAULT.check(ctx, available, term, ty)


def closed_bank(term: LATerm, checker: TypeChecker = None) -> Tuple[TypingResult, object]:
    """Synthesize a closed term and return its result with the required bank value."""
    result = (checker or _DEFAULT).synthesize(EMPTY_CONTEXT, term)
    return result, result.resources.bank.closed_value()
