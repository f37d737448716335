# harness/splay_check.py
"""Splay-tree split: a host-side mirror, conversions, invariants, and the check run.

The mirror follows the λ^A split case for case (same rotations, same credit
policy) so random trees can be grown quickly by root insertion. Every tree
the check measures is converted to a λ^A value and split by the λ^A term.
"""
import random
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from analysis.errors import AmortFlowError, InvariantViolation
from analysis.extract import extract
from analysis.interp import DEFAULT_FUEL, evaluate, phi
from analysis.normalize import normalize_cost
from analysis.typecheck import EMPTY_CONTEXT, closed_bank
from data_models.credits import CreditTerm
from data_models.extended import INF, format_ext
from data_models.la_syntax import App, Emp, LATerm, Node, Num, Pack, Pair, Save
from data_models.reports import SequenceResult, SplayRecord, SplayReport
from harness.corpus import SPLAY_KEY_T, corpus_splay


@dataclass(frozen=True)
class HNode:
    key: int
    credit: int
    size: int
    left: Optional["HNode"] = None
    right: Optional["HNode"] = None


Tree = Optional[HNode]


def size_of(t: Tree) -> int:
    return t.size if t is not None else 0


def fresh(key: int, left: Tree, right: Tree) -> HNode:
    """A node over new children, carrying φ(size) credits."""
    m = 1 + size_of(left) + size_of(right)
    return HNode(key, phi(m), m, left, right)


def potential(t: Tree) -> int:
    return 0 if t is None else t.credit + potential(t.left) + potential(t.right)


def keys(t: Tree) -> List[int]:
    return [] if t is None else keys(t.left) + [t.key] + keys(t.right)


# ---------------------------------------------------------------------------
# host mirror
# ---------------------------------------------------------------------------

def host_split(pivot: int, t: Tree) -> Tuple[Tree, Tree, int, int]:
    """(keys < pivot, keys ≥ pivot, ticks, net credits)."""
    if t is None:
        return None, None, 0, 0
    x = t
    if x.key >= pivot:
        y = x.left
        if y is None:
            return None, x, 1, 0
        if y.key >= pivot:
            small, big, n, r = host_split(pivot, y.left)
            inner = fresh(x.key, y.right, x.right)
            outer = fresh(y.key, big, inner)
            return small, outer, n + 1, r - x.credit - y.credit + inner.credit + outer.credit
        small, big, n, r = host_split(pivot, y.right)
        lo, hi = fresh(y.key, y.left, small), fresh(x.key, big, x.right)
        return lo, hi, n + 1, r - x.credit - y.credit + lo.credit + hi.credit
    y = x.right
    if y is None:
        return x, None, 1, 0
    if y.key >= pivot:
        small, big, n, r = host_split(pivot, y.left)
        lo, hi = fresh(x.key, x.left, small), fresh(y.key, big, y.right)
        return lo, hi, n + 1, r - x.credit - y.credit + lo.credit + hi.credit
    small, big, n, r = host_split(pivot, y.right)
    inner = fresh(x.key, x.left, y.left)
    outer = fresh(y.key, inner, small)
    return outer, big, n + 1, r - x.credit - y.credit + inner.credit + outer.credit


def host_insert(key: int, t: Tree) -> HNode:
    """Split at ``key`` and put it at the root."""
    small, big, _, _ = host_split(key, t)
    return fresh(key, small, big)


def random_tree(size: int, rng: random.Random, key_space: Optional[int] = None) -> Tree:
    """Root-insert ``size`` distinct shuffled keys, starting from the empty tree."""
    pool = rng.sample(range(key_space or 4 * max(size, 1)), size)
    t: Tree = None
    for k in pool:
        t = host_insert(k, t)
    return t


# ---------------------------------------------------------------------------
# λ^A values
# ---------------------------------------------------------------------------

def key_label(key: int, credit: int) -> LATerm:
    c = CreditTerm.constant(credit)
    return Pack(c, SPLAY_KEY_T, Save(INF, c, Num(key)))


def to_la(t: Tree) -> LATerm:
    if t is None:
        return Emp(SPLAY_KEY_T)
    return Node(key_label(t.key, t.credit), Num(t.size), to_la(t.left), to_la(t.right))


def from_la(value: LATerm, path: str = "") -> Tree:
    if isinstance(value, Emp):
        return None
    if not isinstance(value, Node):
        raise InvariantViolation(path, f"not a tree value: {type(value).__name__}")
    label = value.label
    if not (isinstance(label, Pack) and isinstance(label.body, Save) and isinstance(label.body.body, Num)):
        raise InvariantViolation(path, "node label is not a packed key")
    if not isinstance(value.size, Num):
        raise InvariantViolation(path, "cached size is not a numeral")
    credit = label.credit.closed_value()
    if credit is INF:
        raise InvariantViolation(path, "node carries infinite credit")
    return HNode(label.body.body.value, credit, value.size.value,
                 from_la(value.left, path + "L"), from_la(value.right, path + "R"))


def split_pair(value: LATerm) -> Tuple[Tree, Tree]:
    if not isinstance(value, Pair):
        raise InvariantViolation("", "split did not return a pair")
    return from_la(value.left, "small."), from_la(value.right, "big.")


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

def check_invariants(t: Tree, path: str = "", lo=None, hi=None) -> None:
    """Cached sizes, φ(size) credits at every node, and search order."""
    if t is None:
        return
    if lo is not None and t.key <= lo:
        raise InvariantViolation(path, f"key {t.key} not above {lo}")
    if hi is not None and t.key >= hi:
        raise InvariantViolation(path, f"key {t.key} not below {hi}")
    m = 1 + size_of(t.left) + size_of(t.right)
    if t.size != m:
        raise InvariantViolation(path, f"cached size {t.size}, actual {m}")
    if t.credit != phi(m):
        raise InvariantViolation(path, f"credit {t.credit}, expected φ({m}) = {phi(m)}")
    check_invariants(t.left, path + "L", lo, t.key)
    check_invariants(t.right, path + "R", t.key, hi)


def check_partition(pivot: int, original: Tree, small: Tree, big: Tree) -> None:
    if any(k >= pivot for k in keys(small)):
        raise InvariantViolation("small", f"holds a key ≥ {pivot}")
    if any(k < pivot for k in keys(big)):
        raise InvariantViolation("big", f"holds a key < {pivot}")
    if sorted(keys(small) + keys(big)) != keys(original):
        raise InvariantViolation("", "split lost or duplicated keys")


# ---------------------------------------------------------------------------
# λ^A split runs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplitRun:
    small: Tree
    big: Tree
    n: int
    r: int
    bank: int
    extracted_cost: object


def split_function() -> LATerm:
    return corpus_splay().expand("split")


def run_split(split_fn: LATerm, pivot: int, t: Tree, fuel: int = DEFAULT_FUEL,
              with_bound: bool = True) -> SplitRun:
    term = App(split_fn, Pair(Num(pivot), to_la(t)))
    result, bank = closed_bank(term)
    outcome = evaluate(term, fuel=fuel)
    small, big = split_pair(outcome.value)
    cost = None
    if with_bound:
        cost = normalize_cost(extract(EMPTY_CONTEXT, result.derivation).cost, fuel)
    return SplitRun(small, big, outcome.cost.n, outcome.cost.r, bank, cost)


def cross_check(split_fn: LATerm, pivot: int, t: Tree, fuel: int = DEFAULT_FUEL) -> Optional[str]:
    """None when the mirror and the λ^A split agree on trees and costs."""
    run = run_split(split_fn, pivot, t, fuel, with_bound=False)
    small, big, n, r = host_split(pivot, t)
    if (run.small, run.big) != (small, big):
        return "trees differ from the mirror"
    if (run.n, run.r) != (n, r):
        return f"cost ({run.n}, {run.r}) differs from the mirror's ({n}, {r})"
    return None


def splay_bound(size: int) -> int:
    return 1 + 2 * phi(size)


def check_one(split_fn: LATerm, trial: int, t: Tree, pivot: int, fuel: int = DEFAULT_FUEL) -> SplayRecord:
    size = size_of(t)
    run = run_split(split_fn, pivot, t, fuel)
    problems = []
    invariants_ok = True
    try:
        check_invariants(run.small, "small.")
        check_invariants(run.big, "big.")
        check_partition(pivot, t, run.small, run.big)
    except InvariantViolation as e:
        invariants_ok = False
        problems.append(str(e))

    amortized = run.n + run.r
    bound = splay_bound(size)
    phi_in, phi_out = potential(t), potential(run.small) + potential(run.big)
    if run.bank != phi_in:
        problems.append(f"split needed bank {run.bank}, tree holds {phi_in}")
    if amortized > bound:
        problems.append(f"n + r = {amortized} exceeds 1 + 2φ({size}) = {bound}")
    if run.extracted_cost is not INF and amortized > run.extracted_cost:
        problems.append(f"n + r = {amortized} exceeds the extracted cost {run.extracted_cost}")
    if run.r != phi_out - phi_in:
        problems.append(f"r = {run.r} but the potential moved by {phi_out - phi_in}")
    mirror = host_split(pivot, t)
    if (mirror[0], mirror[1]) != (run.small, run.big):
        problems.append("result differs from the host mirror")

    cost = run.extracted_cost
    return SplayRecord(
        trial=trial, size=size, pivot=pivot, n=run.n, r=run.r, amortized=amortized, bound=bound,
        extracted_cost=format_ext(cost) if cost is INF else cost,
        input_potential=phi_in, output_potential=phi_out, invariants_ok=invariants_ok,
        verdict="fail" if problems else "pass", detail="; ".join(problems),
    )


# ---------------------------------------------------------------------------
# the rotation inequality
# ---------------------------------------------------------------------------

def _recursive_bound(p: int) -> int:
    return splay_bound(p) if p else 0


def okasaki_instances(limit: int) -> Iterator[Tuple[str, int, int]]:
    """(case, amortized upper estimate, bound) for every subtree-size split with |t| ≤ limit.

    p1 and p2 are the grandchild sizes under y, p3 the other child of x, and
    (s, b) how the recursive call divides its subtree. The mirrored right-hand
    cases have the same arithmetic.
    """
    for total in range(2, limit + 1):
        for p1 in range(total - 1):
            for p2 in range(total - 1 - p1):
                p3 = total - 2 - p1 - p2
                old = phi(total) + phi(1 + p1 + p2)
                bound = splay_bound(total)
                for s in range(p1 + 1):
                    b = p1 - s
                    fresh_cost = phi(1 + p2 + p3) + phi(2 + b + p2 + p3)
                    yield "zig-zig", 1 + _recursive_bound(p1) - old + fresh_cost, bound
                for s in range(p2 + 1):
                    b = p2 - s
                    fresh_cost = phi(1 + p1 + s) + phi(1 + b + p3)
                    yield "zig-zag", 1 + _recursive_bound(p2) - old + fresh_cost, bound


def okasaki_check(limit: int) -> Tuple[int, List[str]]:
    count, failures = 0, []
    for case, amortized, bound in okasaki_instances(limit):
        count += 1
        if amortized > bound:
            failures.append(f"{case}: {amortized} > {bound}")
    return count, failures


# ---------------------------------------------------------------------------
# sequences
# ---------------------------------------------------------------------------

def run_sequence(split_fn: LATerm, length: int, rng: random.Random, fuel: int = DEFAULT_FUEL) -> SequenceResult:
    """Split-then-root-insert ``length`` fresh keys, starting from a singleton tree."""
    pool = rng.sample(range(4 * (length + 1)), length + 1)
    t: Tree = fresh(pool[0], None, None)
    phi_initial = potential(t)
    ticks = plain = inserted = 0
    for key in pool[1:]:
        size = size_of(t)
        run = run_split(split_fn, key, t, fuel, with_bound=False)
        ticks += run.n
        plain += splay_bound(size)
        t = fresh(key, run.small, run.big)
        inserted += t.credit
    accounted = plain + phi_initial + inserted - potential(t)
    return SequenceResult(operations=length, total_ticks=ticks, plain_bound=plain,
                          accounted_bound=accounted, verdict="pass" if ticks <= accounted else "fail")


def check_splay(max_size: int = 64, trials: int = 200, seed: int = 0, sequence_length: int = 32,
                okasaki_limit: int = 64, fuel: int = DEFAULT_FUEL) -> SplayReport:
    """Random splits of random trees, the rotation inequality, and one split sequence."""
    rng = random.Random(seed)
    split_fn = split_function()
    report = SplayReport()
    for trial in range(trials):
        size = rng.randint(1, max_size)
        t = random_tree(size, rng)
        pivot = rng.randrange(4 * size + 1)
        try:
            report.records.append(check_one(split_fn, trial, t, pivot, fuel))
        except AmortFlowError as e:
            report.records.append(SplayRecord(
                trial=trial, size=size, pivot=pivot, n=0, r=0, amortized=0, bound=splay_bound(size),
                extracted_cost=0, input_potential=potential(t), output_potential=0,
                invariants_ok=False, verdict="fail", detail=f"{type(e).__name__}: {e}"))
    report.okasaki_cases, report.okasaki_failures = okasaki_check(okasaki_limit)
    if sequence_length:
        report.sequence = run_sequence(split_fn, sequence_length, rng, fuel)
    return report
