# analysis/extract.py
"""Recurrence extraction from λ^A derivations into λ^C.

A λ^A type A becomes the complexity type ‖A‖ = ℂ × ⟨A⟩; a derivation of
M : A becomes a λ^C term of type ‖A‖ whose first component bounds the
amortized cost of M and whose second component is M's potential.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple, Union

from analysis.typecheck import EMPTY_CONTEXT, Derivation, TypeChecker, TypingContext
from data_models.binding import fresh_name
from data_models.credits import CreditTerm
from data_models.extended import INF
from data_models.la_syntax import (
    LA, LAType, LATerm, TBang, TExists, TList, TLolli, TNat, TSum, TTensor, TTree, TUnit, TWith,
)
from data_models.lc_syntax import (
    COST_T, DOLLAR_T, LC_NAT_T, LC_UNIT_T, CAdd, CApp, CCase, CConst, CCons, CEmp, CFst, CInl,
    CInr, CLam, CListRec, CNatRec, CNeg, CNil, CNode, CNum, CPair, CPrim, CScale, CSnd, CSucc,
    CTreeRec, CUnitVal, CVar, DAdd, DConst, LCArrow, LCList, LCProd, LCSum, LCTerm, LCTree,
    LCType, ToCost, cost_sum, let_in,
)

LCContext = Tuple[Tuple[str, LCType], ...]


def potential_type(ty: LAType) -> LCType:
    """⟨A⟩: the modality is erased, ∃ becomes a $-tagged pair, & pairs carry costs."""
    if isinstance(ty, TUnit):
        return LC_UNIT_T
    if isinstance(ty, TNat):
        return LC_NAT_T
    if isinstance(ty, TTensor):
        return LCProd(potential_type(ty.left), potential_type(ty.right))
    if isinstance(ty, TSum):
        return LCSum(potential_type(ty.left), potential_type(ty.right))
    if isinstance(ty, TWith):
        return LCProd(complexity_type(ty.left), complexity_type(ty.right))
    if isinstance(ty, TLolli):
        return LCArrow(potential_type(ty.arg), complexity_type(ty.res))
    if isinstance(ty, TList):
        return LCList(potential_type(ty.elem))
    if isinstance(ty, TTree):
        return LCTree(potential_type(ty.elem))
    if isinstance(ty, TBang):
        return potential_type(ty.body)
    if isinstance(ty, TExists):
        return LCProd(DOLLAR_T, potential_type(ty.body))
    raise TypeError(f"not a λ^A type: {ty!r}")


def complexity_type(ty: LAType) -> LCType:
    return LCProd(COST_T, potential_type(ty))


def extract_context(ctx: TypingContext) -> LCContext:
    """⟨Δ | Γ⟩: credit variables at $, term variables at their potential types."""
    credit = tuple((alpha, DOLLAR_T) for alpha in ctx.credit_vars)
    terms = tuple((name, potential_type(ty)) for name, ty in ctx.term_vars)
    return credit + terms


@dataclass(frozen=True)
class Complexity:
    term: LCTerm
    type: LCType
    context: LCContext = field(default=())

    @property
    def cost(self) -> LCTerm:
        return CFst(self.term)

    @property
    def potential(self) -> LCTerm:
        return CSnd(self.term)


def _scaled(k, cost: LCTerm) -> LCTerm:
    if k == 1:
        return cost
    return CScale(k, cost)


class Extractor:
    """Translates one derivation. Generated names avoid every name in the source."""

    def __init__(self, avoid: Iterable[str] = ()):
        self._avoid: Set[str] = set(avoid)
        self._credit_names: Dict[str, str] = {}

    def fresh(self, base: str) -> str:
        name = fresh_name(base, self._avoid)
        self._avoid.add(name)
        return name

    def bind_credit(self, alpha: str) -> str:
        """λ^C name for a credit variable; renamed when it collides with a term variable."""
        name = alpha if alpha not in self._avoid else self.fresh(alpha)
        self._avoid.add(name)
        self._credit_names[alpha] = name
        return name

    # --- credit terms as λ^C costs and $ values ---------------------------

    def cost_of_credit(self, c: CreditTerm) -> LCTerm:
        parts: List[LCTerm] = []
        for alpha, coeff in c.coeffs:
            var = ToCost(CVar(self._credit_names.get(alpha, alpha)))
            parts.append(_scaled(coeff, var))
        if c.const != 0:
            parts.append(CConst(c.const))
        return cost_sum(*parts)

    def dollar_of_credit(self, c: CreditTerm) -> LCTerm:
        out: Optional[LCTerm] = DConst(c.const) if c.const != 0 or not c.coeffs else None
        for alpha, coeff in c.coeffs:
            if coeff is INF:
                # ∞·α is bounded above by the ∞ constant
                return DConst(INF)
            for _ in range(coeff):
                var = CVar(self._credit_names.get(alpha, alpha))
                out = var if out is None else DAdd(out, var)
        return out

    # --- driver ---------------------------------------------------------

    def extract(self, d: Derivation) -> LCTerm:
        return getattr(self, f"_extract_{d.rule}")(d)

    def _let(self, base: str, d: Derivation, body_fn) -> LCTerm:
        """``let base = ‖d‖ in body_fn(base)``."""
        name = self.fresh(base)
        return let_in(name, complexity_type(d.type), self.extract(d), body_fn(CVar(name)))

    def _result(self, ty: LAType, bound: LCTerm, body_fn) -> LCTerm:
        name = self.fresh("r")
        return let_in(name, complexity_type(ty), bound, body_fn(CVar(name)))

    @staticmethod
    def _shift(cost: LCTerm, m: LCTerm) -> LCTerm:
        """cost +_c m."""
        return CPair(cost_sum(cost, CFst(m)), CSnd(m))

    # --- structural -----------------------------------------------------

    def _extract_var(self, d):
        return CPair(CConst(0), CVar(d.term.name))

    def _extract_lam(self, d):
        t = d.term
        return CPair(CConst(0), CLam(t.var, potential_type(t.ty), self.extract(d.children[0])))

    def _extract_app(self, d):
        fn, arg = d.children
        return self._let("m", fn, lambda m: self._let("n", arg, lambda n: self._result(
            d.type, CApp(CSnd(m), CSnd(n)),
            lambda r: CPair(cost_sum(CFst(m), CFst(n), CFst(r)), CSnd(r)))))

    def _extract_pair(self, d):
        left, right = d.children
        return self._let("m", left, lambda m: self._let("n", right, lambda n: CPair(
            cost_sum(CFst(m), CFst(n)), CPair(CSnd(m), CSnd(n)))))

    def _extract_letp(self, d):
        t = d.term
        scr, body = d.children
        tensor = scr.type

        def inner(m):
            bound = let_in(t.left_var, potential_type(tensor.left), CFst(CSnd(m)),
                           let_in(t.right_var, potential_type(tensor.right), CSnd(CSnd(m)),
                                  self.extract(body)))
            return self._result(d.type, bound, lambda r: CPair(
                cost_sum(_scaled(t.mult, CFst(m)), CFst(r)), CSnd(r)))
        return self._let("m", scr, inner)

    def _extract_inl(self, d):
        other = potential_type(d.term.other)
        return self._let("m", d.children[0], lambda m: CPair(CFst(m), CInl(CSnd(m), other)))

    def _extract_inr(self, d):
        other = potential_type(d.term.other)
        return self._let("m", d.children[0], lambda m: CPair(CFst(m), CInr(CSnd(m), other)))

    def _extract_case(self, d):
        t = d.term
        scr, left, right = d.children

        def inner(m):
            bound = CCase(CSnd(m), t.left_var, self.extract(left), t.right_var, self.extract(right))
            return self._result(d.type, bound, lambda r: CPair(
                cost_sum(_scaled(t.mult, CFst(m)), CFst(r)), CSnd(r)))
        return self._let("m", scr, inner)

    def _extract_with(self, d):
        left, right = d.children
        return CPair(CConst(0), CPair(self.extract(left), self.extract(right)))

    def _extract_proj(self, d, project):
        return self._let("m", d.children[0], lambda m: self._result(
            d.type, project(CSnd(m)), lambda r: CPair(cost_sum(CFst(m), CFst(r)), CSnd(r))))

    def _extract_fst(self, d):
        return self._extract_proj(d, CFst)

    def _extract_snd(self, d):
        return self._extract_proj(d, CSnd)

    def _extract_unit(self, d):
        return CPair(CConst(0), CUnitVal())

    # --- data -----------------------------------------------------------

    def _extract_num(self, d):
        return CPair(CConst(0), CNum(d.term.value))

    def _extract_succ(self, d):
        return self._let("m", d.children[0], lambda m: CPair(CFst(m), CSucc(CSnd(m))))

    def _extract_nil(self, d):
        return CPair(CConst(0), CNil(potential_type(d.term.elem)))

    def _extract_cons(self, d):
        head, tail = d.children
        return self._let("h", head, lambda h: self._let("t", tail, lambda tl: CPair(
            cost_sum(CFst(h), CFst(tl)), CCons(CSnd(h), CSnd(tl)))))

    def _extract_emp(self, d):
        return CPair(CConst(0), CEmp(potential_type(d.term.elem)))

    def _extract_node(self, d):
        label, size, left, right = d.children
        return self._let("x", label, lambda x: self._let("n", size, lambda n: self._let(
            "a", left, lambda a: self._let("b", right, lambda b: CPair(
                cost_sum(CFst(x), CFst(n), CFst(a), CFst(b)),
                CNode(CSnd(x), CSnd(n), CSnd(a), CSnd(b)))))))

    def _extract_prim(self, d):
        args = d.children

        def build(i: int, seen: List[LCTerm]) -> LCTerm:
            if i == len(args):
                cost = cost_sum(*(CFst(v) for v in seen))
                return CPair(cost, CPrim(d.term.op, tuple(CSnd(v) for v in seen)))
            return self._let("p", args[i], lambda v: build(i + 1, seen + [v]))
        return build(0, [])

    # --- recursors ------------------------------------------------------

    def _recursor(self, d, build):
        """Shared shape: bind every premise, then ``let r = build(...) in (Σ costs + π₁r, π₂r)``."""
        names = ("m", "b", "s", "s", "s", "s")
        children = d.children

        def bind(i: int, seen: List[LCTerm]) -> LCTerm:
            if i == len(children):
                return self._result(d.type, build(*seen), lambda r: CPair(
                    cost_sum(*(CFst(v) for v in seen), CFst(r)), CSnd(r)))
            return self._let(names[i], children[i], lambda v: bind(i + 1, seen + [v]))
        return bind(0, [])

    def _extract_nrec(self, d):
        result = complexity_type(d.type)

        def build(m, b, s):
            p = self.fresh("p")
            z = self.fresh("z")
            step = CLam(p, LCProd(LC_NAT_T, result), CApp(CSnd(s), CPair(
                CFst(CVar(p)), CLam(z, LC_UNIT_T, CSnd(CVar(p))))))
            return CNatRec(CSnd(m), CApp(CSnd(b), CUnitVal()), step)
        return self._recursor(d, build)

    def _extract_lrec(self, d):
        result = complexity_type(d.type)
        elem = potential_type(d.children[0].type.elem)

        def build(m, b, s):
            x = self.fresh("x")
            arg = LCProd(elem, LCProd(LCList(elem), result))
            tail = CFst(CSnd(CVar(x)))
            rec = CSnd(CSnd(CVar(x)))
            step = CLam(x, arg, CApp(CSnd(s), CPair(CFst(CVar(x)), CPair(CPair(CConst(0), tail), rec))))
            return CListRec(CSnd(m), CApp(CSnd(b), CUnitVal()), step)
        return self._recursor(d, build)

    def _extract_treerec(self, d):
        result = complexity_type(d.type)
        elem = potential_type(d.children[0].type.elem)
        suspended = LCProd(LCTree(elem), result)
        view = LCProd(elem, LCProd(LC_NAT_T, LCProd(suspended, suspended)))

        def adapt_s(s: LCTerm) -> LCTerm:
            return CPair(CPair(CConst(0), CFst(s)), CSnd(s))

        def adapt_v(v: LCTerm) -> LCTerm:
            rest = CSnd(CSnd(v))
            return CPair(CFst(v), CPair(CFst(CSnd(v)), CPair(adapt_s(CFst(rest)), adapt_s(CSnd(rest)))))

        def wrap(s: LCTerm, arg_ty: LCType, adapt) -> LCTerm:
            x = self.fresh("x")
            return CLam(x, arg_ty, CApp(CSnd(s), adapt(CVar(x))))

        def build(m, b, leaf, left_empty, right_empty, both):
            leaf_ty = LCProd(elem, LC_NAT_T)
            one_ty = LCProd(elem, LCProd(LC_NAT_T, view))
            two_ty = LCProd(elem, LCProd(LC_NAT_T, LCProd(view, view)))

            def one(x):
                return CPair(CFst(x), CPair(CFst(CSnd(x)), adapt_v(CSnd(CSnd(x)))))

            def two(x):
                views = CSnd(CSnd(x))
                return CPair(CFst(x), CPair(CFst(CSnd(x)), CPair(adapt_v(CFst(views)), adapt_v(CSnd(views)))))
            return CTreeRec(
                CSnd(m), CApp(CSnd(b), CUnitVal()),
                wrap(leaf, leaf_ty, lambda x: x),
                wrap(left_empty, one_ty, one),
                wrap(right_empty, one_ty, one),
                wrap(both, two_ty, two),
            )
        return self._recursor(d, build)

    # --- credits --------------------------------------------------------

    def _extract_tick(self, d):
        return self._let("m", d.children[0], lambda m: self._shift(CConst(1), m))

    def _extract_create(self, d):
        cost = self.cost_of_credit(d.term.credit)
        return self._let("m", d.children[0], lambda m: self._shift(cost, m))

    def _extract_spend(self, d):
        c = d.term.credit
        cost = CConst(-c.const) if c.is_closed() and c.const is not INF else CNeg(self.cost_of_credit(c))
        return self._let("m", d.children[0], lambda m: self._shift(cost, m))

    def _extract_save(self, d):
        k = d.term.mult
        return self._let("m", d.children[0], lambda m: CPair(_scaled(k, CFst(m)), CSnd(m)))

    def _extract_transfer(self, d):
        t = d.term
        scr, body = d.children

        def inner(m):
            bound = let_in(t.var, potential_type(scr.type.body), CSnd(m), self.extract(body))
            return self._result(d.type, bound, lambda r: CPair(
                cost_sum(_scaled(t.mult, CFst(m)), CFst(r)), CSnd(r)))
        return self._let("m", scr, inner)

    def _extract_pack(self, d):
        dollars = self.dollar_of_credit(d.term.credit)
        return self._let("m", d.children[0], lambda m: CPair(CFst(m), CPair(dollars, CSnd(m))))

    def _extract_unpack(self, d):
        t = d.term
        scr, body = d.children
        alpha = d.binders[0] if d.binders else t.credit_var

        def inner(m):
            name = self.bind_credit(alpha)
            bound = let_in(name, DOLLAR_T, CFst(CSnd(m)), let_in(
                t.var, potential_type(scr.type.body), CSnd(CSnd(m)), self.extract(body)))
            return self._result(d.type, bound, lambda r: CPair(cost_sum(CFst(m), CFst(r)), CSnd(r)))
        return self._let("m", scr, inner)


def _source_names(d: Derivation, ctx: TypingContext) -> Set[str]:
    names = set(LA.all_names(d.term))
    names.update(name for name, _ in ctx.term_vars)
    return names


def extract(ctx: TypingContext, source: Union[Derivation, LATerm] = None) -> Complexity:
    """‖M‖ for a term typed under ``ctx`` (or an existing derivation of it)."""
    if source is None:
        ctx, source = EMPTY_CONTEXT, ctx
    d = source if isinstance(source, Derivation) else TypeChecker().derive(ctx, source)
    avoid = _source_names(d, ctx)
    extractor = Extractor(avoid)
    for alpha in ctx.credit_vars:
        extractor.bind_credit(alpha)
    return Complexity(extractor.extract(d), complexity_type(d.type), extract_context(ctx))
