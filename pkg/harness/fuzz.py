# harness/fuzz.py
"""Generated closed λ^A programs run against the metatheory.

Terms are produced top-down from a target type and then filtered through
the typechecker, so the generator only has to be roughly affine. Every
accepted term is checked for preservation, zero-cost values, erasure tick
agreement, extraction typing, and its extracted bound.
"""
import random
from dataclasses import dataclass, fields, replace
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from analysis.erase import erase, eval_stlc
from analysis.errors import AmortFlowError, EvaluationError, TypeCheckError
from analysis.extract import complexity_type, extract
from analysis.interp import DEFAULT_FUEL, evaluate
from analysis.lc_typecheck import lc_typecheck
from analysis.leq import LeqCertificate, beta_simplify, leq_check
from analysis.sem import check_leq_sampled
from analysis.typecheck import EMPTY_CONTEXT, TypeChecker, TypingResult, closed_bank
from data_models.credits import CreditTerm, ResourceTerm
from data_models.extended import INF
from data_models.la_syntax import (
    BIT_T, NAT_T, UNIT_T, App, Case, Cons, Create, Fst, Inl, Inr, LATerm, LAType, Lam, LetPair,
    NatRec, Nil, Num, Pack, Pair, Prim, Save, Snd, Spend, Succ, TBang, TExists, TList, TLolli, TNat,
    TSum, TTensor, TUnit, TWith, Tick, Transfer, UnitVal, Unpack, Var, WithPair, is_value,
    type_credit_subst,
)
from data_models.lc_syntax import LCTerm, LCType
from data_models.reports import FuzzReport, FuzzViolation
from harness.bounds import check_bound
from harness.corpus import BANK_T, step, thunk
from utils.la_printer import format_term

MULTS = (1, 1, 2, INF)
CREDITS = (0, 1, 1, 2)
LEQ_T = TSum(UNIT_T, UNIT_T)


class TermGenerator:
    """Random terms at a target type, bounded by ``max_depth``."""

    def __init__(self, rng: random.Random, max_depth: int = 6):
        self.rng = rng
        self.max_depth = max_depth
        self._counter = 0

    def fresh(self, base: str = "x") -> str:
        self._counter += 1
        return f"{base}{self._counter}"

    def credit(self) -> CreditTerm:
        return CreditTerm.constant(self.rng.choice(CREDITS))

    def random_type(self, depth: int = 2) -> LAType:
        base = [UNIT_T, NAT_T, NAT_T, BIT_T]
        if depth <= 0:
            return self.rng.choice(base)
        pick = self.rng.randrange(10)
        if pick < 4:
            return base[pick]
        if pick == 4:
            return TTensor(self.random_type(depth - 1), self.random_type(depth - 1))
        if pick == 5:
            return TSum(self.random_type(depth - 1), self.random_type(depth - 1))
        if pick == 6:
            return TBang(self.rng.choice(MULTS), self.credit(), self.random_type(depth - 1))
        if pick == 7:
            return TList(self.rng.choice([NAT_T, BIT_T]))
        if pick == 8:
            return TLolli(self.random_type(depth - 1), self.random_type(depth - 1))
        return TExists("a", TBang(self.rng.choice((1, INF)), CreditTerm.var("a"), self.random_type(0)))

    def closed_term(self) -> Tuple[LATerm, LAType]:
        ty = self.random_type()
        return self.term(ty, self.max_depth, []), ty

    # --- leaves ----------------------------------------------------------

    def _pick_var(self, ty: LAType, scope: List[Tuple[str, LAType]]) -> Optional[str]:
        matches = [name for name, t in scope if t == ty]
        return self.rng.choice(matches) if matches else None

    def leaf(self, ty: LAType, scope: List[Tuple[str, LAType]]) -> LATerm:
        name = self._pick_var(ty, scope)
        if name is not None and self.rng.random() < 0.6:
            return Var(name)
        if isinstance(ty, TUnit):
            return UnitVal()
        if isinstance(ty, TNat):
            return Num(self.rng.randint(0, 5))
        if isinstance(ty, TSum):
            if self.rng.random() < 0.5:
                return Inl(self.leaf(ty.left, scope), ty.right)
            return Inr(self.leaf(ty.right, scope), ty.left)
        if isinstance(ty, TTensor):
            return Pair(self.leaf(ty.left, scope), self.leaf(ty.right, scope))
        if isinstance(ty, TWith):
            return WithPair(self.leaf(ty.left, scope), self.leaf(ty.right, scope))
        if isinstance(ty, TBang):
            return Save(ty.mult, ty.credit, self.leaf(ty.body, []))
        if isinstance(ty, TList):
            if self.rng.random() < 0.5:
                return Nil(ty.elem)
            return Cons(self.leaf(ty.elem, []), Nil(ty.elem))
        if isinstance(ty, TLolli):
            x = self.fresh()
            return Lam(x, ty.arg, self.leaf(ty.res, scope + [(x, ty.arg)]))
        if isinstance(ty, TExists):
            c = self.credit()
            return Pack(c, ty, self.leaf(type_credit_subst(ty.body, ty.var, c), []))
        raise ValueError(f"no generator for {ty}")

    # --- composite -------------------------------------------------------

    def term(self, ty: LAType, depth: int, scope: List[Tuple[str, LAType]]) -> LATerm:
        if depth <= 0 or self.rng.random() < 0.2:
            return self.leaf(ty, scope)
        builders = self._introductions(ty) + self._eliminations(ty)
        return self.rng.choice(builders)(ty, depth - 1, scope)

    def _introductions(self, ty: LAType) -> List[Callable]:
        if isinstance(ty, TNat):
            return [self._succ, self._add, self._phi, self._nrec]
        if isinstance(ty, TUnit):
            return [self._nrec]
        if isinstance(ty, TSum):
            out = [self._inj]
            if ty == LEQ_T:
                out.append(self._leq)
            return out
        if isinstance(ty, TTensor):
            out = [self._pair]
            if ty == TTensor(NAT_T, NAT_T):
                out.append(self._dup)
            return out
        if isinstance(ty, TBang):
            return [self._save]
        if isinstance(ty, TList):
            return [self._cons]
        if isinstance(ty, TLolli):
            return [self._lam]
        if isinstance(ty, TExists):
            return [self._pack]
        return []

    def _eliminations(self, ty: LAType) -> List[Callable]:
        return [self._tick, self._create, self._spend, self._app, self._letp, self._case,
                self._transfer, self._unpack, self._with]

    def _succ(self, ty, depth, scope):
        return Succ(self.term(NAT_T, depth, scope))

    def _add(self, ty, depth, scope):
        return Prim("add", (self.term(NAT_T, depth, scope), self.term(NAT_T, depth, scope)))

    def _phi(self, ty, depth, scope):
        return Prim("phi", (self.term(NAT_T, depth, scope),))

    def _leq(self, ty, depth, scope):
        return Prim("leq", (self.term(NAT_T, depth, scope), self.term(NAT_T, depth, scope)))

    def _dup(self, ty, depth, scope):
        return Prim("dup", (self.term(NAT_T, depth, scope),))

    def _nrec(self, ty, depth, scope):
        q, m, r = self.fresh("q"), self.fresh("m"), self.fresh("r")
        again = App(Var(r), UnitVal())
        body = self.rng.choice([again, Tick(again), Succ(again) if isinstance(ty, TNat) else again])
        loop = step(q, TTensor(NAT_T, TLolli(UNIT_T, ty)), LetPair(m, r, Var(q), body))
        base = thunk(self.term(ty, depth // 2, scope))
        return NatRec(Num(self.rng.randint(0, 4)), base, loop)

    def _inj(self, ty, depth, scope):
        if self.rng.random() < 0.5:
            return Inl(self.term(ty.left, depth, scope), ty.right)
        return Inr(self.term(ty.right, depth, scope), ty.left)

    def _pair(self, ty, depth, scope):
        return Pair(self.term(ty.left, depth, scope), self.term(ty.right, depth, scope))

    def _save(self, ty, depth, scope):
        return Save(ty.mult, ty.credit, self.term(ty.body, depth, []))

    def _cons(self, ty, depth, scope):
        return Cons(self.term(ty.elem, depth, scope), self.term(ty, depth, scope))

    def _lam(self, ty, depth, scope):
        x = self.fresh()
        return Lam(x, ty.arg, self.term(ty.res, depth, scope + [(x, ty.arg)]))

    def _pack(self, ty, depth, scope):
        c = self.credit()
        return Pack(c, ty, self.term(type_credit_subst(ty.body, ty.var, c), depth, []))

    def _tick(self, ty, depth, scope):
        return Tick(self.term(ty, depth, scope))

    def _create(self, ty, depth, scope):
        return Create(self.credit(), self.term(ty, depth, scope))

    def _spend(self, ty, depth, scope):
        return Spend(self.credit(), self.term(ty, depth, scope))

    def _app(self, ty, depth, scope):
        arg_ty, x = self.random_type(1), self.fresh()
        fn = Lam(x, arg_ty, self.term(ty, depth, scope + [(x, arg_ty)]))
        return App(fn, self.term(arg_ty, depth, []))

    def _letp(self, ty, depth, scope):
        a, b = self.random_type(0), self.random_type(0)
        x, y = self.fresh(), self.fresh()
        return LetPair(x, y, self.term(TTensor(a, b), depth, []),
                       self.term(ty, depth, scope + [(x, a), (y, b)]))

    def _case(self, ty, depth, scope):
        a, b = self.random_type(0), self.random_type(0)
        x, y = self.fresh(), self.fresh()
        return Case(self.term(TSum(a, b), depth, []), x, self.term(ty, depth, scope + [(x, a)]),
                    y, self.term(ty, depth, scope + [(y, b)]))

    def _transfer(self, ty, depth, scope):
        inner = TBang(self.rng.choice(MULTS), self.credit(), self.random_type(0))
        y = self.fresh("y")
        return Transfer(y, self.term(inner, depth, []), self.term(ty, depth, scope + [(y, inner.body)]))

    def _unpack(self, ty, depth, scope):
        alpha, x, y = self.fresh("a"), self.fresh(), self.fresh("y")
        c = self.credit()
        packed = Pack(c, BANK_T, Save(1, c, UnitVal()))
        return Unpack(alpha, x, packed, Transfer(y, Var(x), self.term(ty, depth, scope)))

    def _with(self, ty, depth, scope):
        both = WithPair(self.term(ty, depth, scope), self.term(ty, depth, scope))
        return Fst(both) if self.rng.random() < 0.5 else Snd(both)


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Observation:
    term: LATerm
    result: TypingResult
    bank: object
    value: LATerm
    n: int
    r: int


def observe(term: LATerm, fuel: int = DEFAULT_FUEL) -> Observation:
    """Typecheck and evaluate a closed term. Raises TypeCheckError or EvaluationError."""
    result, bank = closed_bank(term, TypeChecker())
    if bank is INF:
        raise TypeCheckError("generated term needs an unbounded bank")
    outcome = evaluate(term, fuel=fuel)
    return Observation(term, result, bank, outcome.value, outcome.cost.n, outcome.cost.r)


def _preservation(obs: Observation, fuel: int) -> Optional[str]:
    left = obs.bank + obs.r
    if left < 0:
        return f"a + r = {obs.bank} + {obs.r} < 0"
    try:
        TypeChecker().check(EMPTY_CONTEXT, ResourceTerm.make(bank=left), obs.value, obs.result.type)
    except TypeCheckError as e:
        return f"value does not retype at bank {left}: {e}"
    return None


def _value_cost(obs: Observation, fuel: int) -> Optional[str]:
    again = evaluate(obs.value, fuel=fuel)
    if (again.cost.n, again.cost.r) != (0, 0):
        return f"value evaluated at ({again.cost.n}, {again.cost.r})"
    if is_value(obs.term) and (obs.n, obs.r) != (0, 0):
        return f"value term evaluated at ({obs.n}, {obs.r})"
    return None


def _erasure(obs: Observation, fuel: int) -> Optional[str]:
    _, ticks = eval_stlc(erase(obs.result.derivation), fuel)
    if ticks != obs.n:
        return f"erased program ticks {ticks} times, source {obs.n}"
    return None


def _extraction_typing(obs: Observation, fuel: int) -> Optional[str]:
    complexity = extract(EMPTY_CONTEXT, obs.result.derivation)
    found = lc_typecheck({}, complexity.term)
    expected = complexity_type(obs.result.type)
    if found != expected:
        return f"extraction has type {found}, expected {expected}"
    return None


def _bound(obs: Observation, fuel: int) -> Optional[str]:
    record = check_bound(obs.term, obs.bank, fuel=fuel)
    return record.detail if record.verdict == "fail" else None


PROPERTIES: Dict[str, Callable[[Observation, int], Optional[str]]] = {
    "preservation": _preservation,
    "value_cost": _value_cost,
    "erasure": _erasure,
    "extraction_typing": _extraction_typing,
    "bound": _bound,
}


def failure(prop: str, term: LATerm, fuel: int = DEFAULT_FUEL) -> Optional[str]:
    """The failure detail of ``prop`` on ``term``; None when it holds or the term is rejected."""
    try:
        obs = observe(term, fuel)
    except (TypeCheckError, EvaluationError):
        return None
    try:
        return PROPERTIES[prop](obs, fuel)
    except AmortFlowError as e:
        return f"{type(e).__name__}: {e}"


# ---------------------------------------------------------------------------
# shrinking
# ---------------------------------------------------------------------------

def _children(term: LATerm) -> Iterator[Tuple[str, LATerm]]:
    for f in fields(term):
        value = getattr(term, f.name)
        if isinstance(value, LATerm):
            yield f.name, value


def shrink_candidates(term: LATerm) -> Iterator[LATerm]:
    """Direct subterms first, then the term with one child replaced by one of its subterms."""
    children = list(_children(term))
    for _, child in children:
        yield child
    for name, child in children:
        for grandchild in (g for _, g in _children(child)):
            yield replace(term, **{name: grandchild})


def shrink(term: LATerm, prop: str, budget: int = 200, fuel: int = DEFAULT_FUEL) -> LATerm:
    """Greedily replace ``term`` by smaller terms that still fail ``prop``."""
    current, tries = term, 0
    improved = True
    while improved and tries < budget:
        improved = False
        for candidate in shrink_candidates(current):
            tries += 1
            if failure(prop, candidate, fuel) is not None:
                current, improved = candidate, True
                break
            if tries >= budget:
                break
    return current


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def generate_terms(count: int, depth: int, seed: int, fuel: int = DEFAULT_FUEL,
                   report: Optional[FuzzReport] = None) -> Iterator[Observation]:
    """Observations of ``count`` well-typed closed terms; rejected attempts are tallied on ``report``."""
    gen = TermGenerator(random.Random(seed), depth)
    produced, attempts = 0, 0
    while produced < count and attempts < 50 * max(count, 1):
        attempts += 1
        term, _ = gen.closed_term()
        try:
            obs = observe(term, fuel)
        except (TypeCheckError, EvaluationError):
            if report is not None:
                report.discarded += 1
            continue
        produced += 1
        yield obs


def fuzz_metatheory(count: int = 1000, depth: int = 6, seed: int = 0, fuel: int = DEFAULT_FUEL,
                    shrink_budget: int = 200, properties: Sequence[str] = tuple(PROPERTIES)) -> FuzzReport:
    report = FuzzReport(seed=seed)
    for obs in generate_terms(count, depth, seed, fuel, report):
        report.generated += 1
        report.values_checked += 1
        for prop in properties:
            report.count(prop)
            try:
                detail = PROPERTIES[prop](obs, fuel)
            except AmortFlowError as e:
                detail = f"{type(e).__name__}: {e}"
            if detail is None:
                continue
            shrunk = shrink(obs.term, prop, shrink_budget, fuel)
            report.violations.append(FuzzViolation(
                property=prop, term=format_term(obs.term), shrunk=format_term(shrunk), detail=detail))
    return report


# ---------------------------------------------------------------------------
# certificate instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertificateInstance:
    """lhs ≤ rhs at ``type``, with ``certificate`` deriving it."""
    source: LATerm
    lhs: LCTerm
    rhs: LCTerm
    type: LCType
    certificate: LeqCertificate


def generate_certificate_instances(count: int, seed: int = 0, depth: int = 4,
                                   fuel: int = DEFAULT_FUEL) -> List[CertificateInstance]:
    """β-simplified extractions of generated terms, each below its original."""
    out = []
    for obs in generate_terms(count, depth, seed, fuel):
        complexity = extract(EMPTY_CONTEXT, obs.result.derivation)
        simplified, cert = beta_simplify(complexity.term)
        out.append(CertificateInstance(obs.term, simplified, complexity.term, complexity.type, cert))
    return out


def check_certificates(count: int, seed: int = 0, samples: int = 50, depth: int = 4,
                       fuel: int = DEFAULT_FUEL, report: Optional[FuzzReport] = None) -> FuzzReport:
    """Validate each instance's certificate, then sample the inequality it claims."""
    report = report if report is not None else FuzzReport(seed=seed)
    for inst in generate_certificate_instances(count, seed, depth, fuel):
        report.count("leq_soundness")
        try:
            if not leq_check(inst.certificate, inst.lhs, inst.rhs, inst.type):
                detail = "certificate does not conclude simplified ≤ original"
            else:
                verdict = check_leq_sampled({}, inst.lhs, inst.rhs, samples, seed, inst.type)
                detail = None if verdict.passed else verdict.counterexample
        except AmortFlowError as e:
            detail = f"{type(e).__name__}: {e}"
        if detail is not None:
            report.violations.append(FuzzViolation(
                property="leq_soundness", term=format_term(inst.source), detail=detail))
    return report
