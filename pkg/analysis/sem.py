# analysis/sem.py
"""Preorder model of λ^C with lists read as their lengths.

Every type shares the top element ``INF``; pairs and injections of the top
collapse to it. Functions are host closures, assumed monotone, and are only
ever compared by sampling their arguments.
"""
import random
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from analysis.errors import SemanticError
from analysis.interp import phi
from analysis.lc_typecheck import lc_typecheck
from data_models.extended import INF, ext_add, ext_max, ext_mul, ext_neg
from data_models.lc_syntax import (
    CAdd, CApp, CCase, CConst, CCons, CEmp, CFst, CInl, CInr, CLam, CListRec, CMax, CNatRec, CNeg,
    CNil, CNode, CNum, CPair, CPrim, CScale, CSnd, CSucc, CTreeRec, CUnitVal, CVar, DAdd, DConst,
    LCArrow, LCCost, LCDollar, LCList, LCNat, LCProd, LCSum, LCTerm, LCTree, LCType, LCUnit,
    ToCost,
)
from data_models.reports import SampledVerdict

# the single element of 1 is also its top
UNIT_V = INF

NAT_SAMPLES = (0, 1, 2, 3, 7, INF)
COST_SAMPLES = (-1, 0, 1, 2, 5, INF)
DOLLAR_SAMPLES = (0, 1, 2, 5, INF)


@dataclass(frozen=True)
class PairV:
    left: object
    right: object


@dataclass(frozen=True)
class SumV:
    is_left: bool
    body: object


@dataclass(frozen=True)
class ClosureV:
    fn: Callable[[object], object]
    label: str = "λ"

    def __call__(self, arg):
        return self.fn(arg)


SemVal = Union[int, type(INF), PairV, SumV, ClosureV]
SemEnv = Mapping[str, SemVal]


def make_pair(left, right) -> SemVal:
    if left is INF and right is INF:
        return INF
    return PairV(left, right)


def make_sum(is_left: bool, body) -> SemVal:
    if body is INF:
        return INF
    return SumV(is_left, body)


def successor(v) -> SemVal:
    return ext_add(v, 1)


def apply(fn, arg) -> SemVal:
    if fn is INF:
        return INF
    if not isinstance(fn, ClosureV):
        raise SemanticError(f"cannot apply {show(fn)}")
    return fn(arg)


def first(v) -> SemVal:
    return INF if v is INF else v.left


def second(v) -> SemVal:
    return INF if v is INF else v.right


def join(a, b) -> SemVal:
    """Binary max; ∞ annihilates."""
    if a is INF or b is INF:
        return INF
    if isinstance(a, int) and isinstance(b, int):
        return max(a, b)
    if isinstance(a, PairV) and isinstance(b, PairV):
        return make_pair(join(a.left, b.left), join(a.right, b.right))
    if isinstance(a, SumV) and isinstance(b, SumV):
        if a.is_left != b.is_left:
            return INF
        return make_sum(a.is_left, join(a.body, b.body))
    if isinstance(a, ClosureV) and isinstance(b, ClosureV):
        return ClosureV(lambda x: join(a(x), b(x)), f"({a.label} ∨ {b.label})")
    raise SemanticError(f"cannot join {show(a)} and {show(b)}")


def sem_leq(a, b, probes: Sequence = NAT_SAMPLES) -> bool:
    """Pointwise order; closures are compared on ``probes``."""
    if b is INF:
        return True
    if a is INF:
        return False
    if isinstance(a, int) and isinstance(b, int):
        return a <= b
    if isinstance(a, PairV) and isinstance(b, PairV):
        return sem_leq(a.left, b.left, probes) and sem_leq(a.right, b.right, probes)
    if isinstance(a, SumV) and isinstance(b, SumV):
        return a.is_left == b.is_left and sem_leq(a.body, b.body, probes)
    if isinstance(a, ClosureV) and isinstance(b, ClosureV):
        return all(sem_leq(a(x), b(x), probes) for x in probes)
    return False


def show(v) -> str:
    if v is INF:
        return "inf"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, PairV):
        return f"({show(v.left)}, {show(v.right)})"
    if isinstance(v, SumV):
        return f"{'inl' if v.is_left else 'inr'} {show(v.body)}"
    if isinstance(v, ClosureV):
        return v.label
    return repr(v)


# ---------------------------------------------------------------------------
# Combinators
# ---------------------------------------------------------------------------

def scase(f: Callable, g: Callable, s) -> SemVal:
    """Each branch is maxed with the other branch's image of ∞."""
    if s is INF:
        return join(f(INF), g(INF))
    if not isinstance(s, SumV):
        raise SemanticError(f"case on {show(s)}")
    if s.is_left:
        return join(f(s.body), g(INF))
    return join(g(s.body), f(INF))


def snrec(base, step: Callable, n) -> SemVal:
    if n is INF:
        return INF
    acc = base
    for k in range(n):
        acc = join(base, step(make_pair(k, acc)))
    return acc


def slrec(base, step: Callable, n) -> SemVal:
    """As snrec, with ∞ standing in for every head element."""
    if n is INF:
        return INF
    acc = base
    for k in range(n):
        acc = join(base, step(make_pair(INF, make_pair(k, acc))))
    return acc


# ---------------------------------------------------------------------------
# Interpretation
# ---------------------------------------------------------------------------

def _prim(op: str, args: List) -> SemVal:
    if op == "add":
        return ext_add(args[0], args[1])
    if op == "leq":
        return INF
    if op == "phi":
        return INF if args[0] is INF else phi(args[0])
    if op == "dup":
        return make_pair(args[0], args[0])
    raise SemanticError(f"unknown primitive '{op}'")


def sem_eval(env: SemEnv, e: LCTerm) -> SemVal:
    if isinstance(e, CVar):
        if e.name not in env:
            raise SemanticError(f"unbound variable '{e.name}'")
        return env[e.name]
    if isinstance(e, CLam):
        return ClosureV(lambda v, env=env, e=e: sem_eval({**env, e.var: v}, e.body), f"λ{e.var}")
    if isinstance(e, CApp):
        return apply(sem_eval(env, e.fn), sem_eval(env, e.arg))
    if isinstance(e, CPair):
        return make_pair(sem_eval(env, e.left), sem_eval(env, e.right))
    if isinstance(e, CFst):
        return first(sem_eval(env, e.body))
    if isinstance(e, CSnd):
        return second(sem_eval(env, e.body))
    if isinstance(e, (CInl, CInr)):
        return make_sum(isinstance(e, CInl), sem_eval(env, e.body))
    if isinstance(e, CCase):
        return scase(
            lambda a: sem_eval({**env, e.left_var: a}, e.left),
            lambda b: sem_eval({**env, e.right_var: b}, e.right),
            sem_eval(env, e.scrutinee),
        )
    if isinstance(e, CUnitVal):
        return UNIT_V
    if isinstance(e, (CNum, CConst, DConst)):
        return e.value
    if isinstance(e, CSucc):
        return successor(sem_eval(env, e.body))
    if isinstance(e, CNatRec):
        step = sem_eval(env, e.step)
        return snrec(sem_eval(env, e.base), lambda p: apply(step, p), sem_eval(env, e.scrutinee))
    if isinstance(e, CNil):
        return 0
    if isinstance(e, CCons):
        return successor(sem_eval(env, e.tail))
    if isinstance(e, CListRec):
        step = sem_eval(env, e.step)
        return slrec(sem_eval(env, e.base), lambda p: apply(step, p), sem_eval(env, e.scrutinee))
    if isinstance(e, (CEmp, CNode, CTreeRec)):
        raise SemanticError("trees have no interpretation in the size model")
    if isinstance(e, (CAdd, DAdd)):
        return ext_add(sem_eval(env, e.left), sem_eval(env, e.right))
    if isinstance(e, CMax):
        return ext_max(sem_eval(env, e.left), sem_eval(env, e.right))
    if isinstance(e, CScale):
        return ext_mul(e.mult, sem_eval(env, e.body))
    if isinstance(e, CNeg):
        return ext_neg(sem_eval(env, e.body))
    if isinstance(e, ToCost):
        return sem_eval(env, e.body)
    if isinstance(e, CPrim):
        return _prim(e.op, [sem_eval(env, a) for a in e.args])
    raise SemanticError(f"not a λ^C term: {type(e).__name__}")


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def sample_values(ty: LCType, rng: random.Random, limit: int = 6) -> List[SemVal]:
    """Representative elements of ⟦ty⟧, always including the boundary points."""
    if isinstance(ty, (LCNat, LCList)):
        return list(NAT_SAMPLES)
    if isinstance(ty, LCCost):
        return list(COST_SAMPLES)
    if isinstance(ty, LCDollar):
        return list(DOLLAR_SAMPLES)
    if isinstance(ty, LCUnit):
        return [UNIT_V]
    if isinstance(ty, LCProd):
        pairs = list(product(sample_values(ty.left, rng, limit), sample_values(ty.right, rng, limit)))
        rng.shuffle(pairs)
        return [make_pair(a, b) for a, b in pairs[:limit]] + [INF]
    if isinstance(ty, LCSum):
        lefts = [make_sum(True, v) for v in sample_values(ty.left, rng, limit)]
        rights = [make_sum(False, v) for v in sample_values(ty.right, rng, limit)]
        out = lefts + rights
        rng.shuffle(out)
        return out[:limit] + [INF]
    if isinstance(ty, LCArrow):
        codomain = sample_values(ty.res, rng, limit)
        out: List[SemVal] = [ClosureV(lambda _x, c=c: c, f"const {show(c)}") for c in codomain[:limit]]
        if ty.arg == ty.res and isinstance(ty.arg, (LCNat, LCCost, LCDollar, LCList)):
            out.append(ClosureV(lambda x: x, "id"))
            out.append(ClosureV(successor, "succ"))
        return out
    if isinstance(ty, LCTree):
        raise SemanticError("trees have no interpretation in the size model")
    raise SemanticError(f"cannot sample {ty}")


def leq_at(ty: LCType, a, b, rng: random.Random) -> bool:
    """a ≤ b in ⟦ty⟧, descending through arrows on sampled arguments."""
    if b is INF:
        return True
    if a is INF:
        return False
    if isinstance(ty, LCArrow):
        return all(leq_at(ty.res, apply(a, x), apply(b, x), rng) for x in sample_values(ty.arg, rng))
    if isinstance(ty, LCProd):
        return leq_at(ty.left, a.left, b.left, rng) and leq_at(ty.right, a.right, b.right, rng)
    if isinstance(ty, LCSum):
        if a.is_left != b.is_left:
            return False
        return leq_at(ty.left if a.is_left else ty.right, a.body, b.body, rng)
    return a <= b


def sample_environments(ctx: Mapping[str, LCType], rng: random.Random, count: int) -> Iterable[Dict[str, SemVal]]:
    """Boundary environments first (all 0, all 1, all ∞ where numeric), then random ones."""
    names = list(ctx)
    pools = {name: sample_values(ctx[name], rng) for name in names}
    for point in (0, 1, INF):
        yield {name: point if point in pools[name] else pools[name][0] for name in names}
    for _ in range(max(0, count - 3)):
        yield {name: rng.choice(pools[name]) for name in names}


def _as_env(ctx) -> Dict[str, LCType]:
    if ctx is None:
        return {}
    return dict(ctx.items()) if isinstance(ctx, Mapping) else dict(ctx)


def check_leq_sampled(ctx, lhs: LCTerm, rhs: LCTerm, samples: int = 50, seed: int = 0,
                      ty: Optional[LCType] = None) -> SampledVerdict:
    """⟦lhs⟧γ ≤ ⟦rhs⟧γ at sampled environments γ."""
    types = _as_env(ctx)
    ty = ty or lc_typecheck(types, lhs)
    rng = random.Random(seed)
    checked = 0
    for env in sample_environments(types, rng, samples):
        a, b = sem_eval(env, lhs), sem_eval(env, rhs)
        checked += 1
        if not leq_at(ty, a, b, rng):
            where = ", ".join(f"{k}={show(v)}" for k, v in env.items()) or "empty environment"
            return SampledVerdict(passed=False, checked=checked,
                                  counterexample=f"{show(a)} > {show(b)} at {where}")
    return SampledVerdict(passed=True, checked=checked)


def check_monotone_sampled(f: Callable, pairs: Iterable[Tuple[SemVal, SemVal]],
                           probes: Sequence = NAT_SAMPLES) -> SampledVerdict:
    """f(x) ≤ f(y) for every sampled x ≤ y."""
    checked = 0
    for x, y in pairs:
        if not sem_leq(x, y, probes):
            continue
        fx, fy = f(x), f(y)
        checked += 1
        if not sem_leq(fx, fy, probes):
            return SampledVerdict(passed=False, checked=checked,
                                  counterexample=f"f({show(x)}) = {show(fx)} > f({show(y)}) = {show(fy)}")
    return SampledVerdict(passed=True, checked=checked)


def ordered_pairs(values: Sequence[SemVal]) -> List[Tuple[SemVal, SemVal]]:
    """Every (x, y) drawn from ``values`` with x ≤ y."""
    return [(x, y) for x in values for y in values if sem_leq(x, y)]


def cost_table(fn: SemVal, sizes: Iterable[int]) -> List[Tuple[int, SemVal]]:
    """Cost component of a complexity-valued function at each input size."""
    return [(n, first(apply(fn, n))) for n in sizes]
