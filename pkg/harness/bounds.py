# harness/bounds.py
"""Run closed programs and hold them to their extracted bounds.

A record passes when the ticks of a run fit under the normalized cost of the
extracted recurrence once the net credits are paid back (n ≤ E_c − r). At
first-order result types the value is also compared against the extracted
potential.
"""
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

from analysis.errors import BoundViolation, InsufficientResources
from analysis.extract import extract
from analysis.interp import DEFAULT_FUEL, evaluate
from analysis.normalize import lc_normalize, normalize_cost
from analysis.typecheck import EMPTY_CONTEXT, TypeChecker, closed_bank
from data_models.extended import INF, ext_monus, format_ext
from data_models.la_syntax import (
    App, Cons, Emp, Inl, Inr, LATerm, LAType, Nil, Node, Num, Pack, Pair, Save, TBang, TExists,
    TList, TNat, TSum, TTensor, TTree, TUnit, UnitVal, list_literal,
)
from data_models.lc_syntax import CCons, CEmp, CInl, CInr, CNil, CNode, CNum, CPair, DConst, LCTerm
from data_models.program import ProgramFile
from data_models.reports import BoundRecord, BoundReport
from utils.la_printer import format_term


# ---------------------------------------------------------------------------
# value bounding
# ---------------------------------------------------------------------------

def is_first_order(ty: LAType) -> bool:
    if isinstance(ty, (TUnit, TNat)):
        return True
    if isinstance(ty, (TTensor, TSum)):
        return is_first_order(ty.left) and is_first_order(ty.right)
    if isinstance(ty, (TList, TTree)):
        return is_first_order(ty.elem)
    if isinstance(ty, (TBang, TExists)):
        return is_first_order(ty.body)
    return False


def _at_most(n, bound) -> bool:
    return bound is INF or n <= bound


def value_bounded(value: LATerm, potential: LCTerm, ty: LAType) -> bool:
    """Whether a first-order value sits under a normalized potential."""
    if isinstance(ty, TUnit):
        return True
    if isinstance(ty, TNat):
        if not isinstance(value, Num):
            return False
        return isinstance(potential, CNum) and _at_most(value.value, potential.value)
    if isinstance(ty, TBang):
        return isinstance(value, Save) and value_bounded(value.body, potential, ty.body)
    if isinstance(ty, TExists):
        if not (isinstance(value, Pack) and isinstance(potential, CPair)):
            return False
        dollars = potential.left.value if isinstance(potential.left, DConst) else None
        if dollars is None or not _at_most(value.credit.closed_value(), dollars):
            return False
        return value_bounded(value.body, potential.right, ty.body)
    if isinstance(ty, TTensor):
        return (isinstance(value, Pair) and isinstance(potential, CPair)
                and value_bounded(value.left, potential.left, ty.left)
                and value_bounded(value.right, potential.right, ty.right))
    if isinstance(ty, TSum):
        if isinstance(value, Inl) and isinstance(potential, CInl):
            return value_bounded(value.body, potential.body, ty.left)
        if isinstance(value, Inr) and isinstance(potential, CInr):
            return value_bounded(value.body, potential.body, ty.right)
        return False
    if isinstance(ty, TList):
        while isinstance(value, Cons):
            if not isinstance(potential, CCons) or not value_bounded(value.head, potential.head, ty.elem):
                return False
            value, potential = value.tail, potential.tail
        return isinstance(value, Nil) and isinstance(potential, (CNil, CCons))
    if isinstance(ty, TTree):
        if isinstance(value, Emp):
            return isinstance(potential, (CEmp, CNode))
        return (isinstance(value, Node) and isinstance(potential, CNode)
                and value_bounded(value.label, potential.label, ty.elem)
                and value_bounded(value.size, potential.size, TNat())
                and value_bounded(value.left, potential.left, ty)
                and value_bounded(value.right, potential.right, ty))
    return False


# ---------------------------------------------------------------------------
# check_bound
# ---------------------------------------------------------------------------

def _fits(n: int, r: int, bound) -> bool:
    return bound is INF or n <= bound - r


def check_bound(term: LATerm, bank=None, *, program: str = "", input_label: str = "", size: int = 0,
                fuel: int = DEFAULT_FUEL, strict: bool = False,
                checker: Optional[TypeChecker] = None) -> BoundRecord:
    """Evaluate a closed term, extract and normalize its cost, and compare.

    ``bank`` defaults to the credits the term itself requires. With
    ``strict`` a failing record raises BoundViolation carrying the full
    evaluation trace.
    """
    checker = checker or TypeChecker()
    result, required = closed_bank(term, checker)
    if bank is None:
        bank = required
    elif not _at_most(required, bank):
        raise InsufficientResources(required, bank, ext_monus(required, bank))

    outcome = evaluate(term, fuel=fuel)
    n, r = outcome.cost.n, outcome.cost.r
    complexity = extract(EMPTY_CONTEXT, result.derivation)
    bound = normalize_cost(complexity.cost, fuel)

    problems: List[str] = []
    if not _fits(n, r, bound):
        problems.append(f"n={n} exceeds E_c - r = {format_ext(bound)} - ({r})")
    if bank == 0:
        if r < 0:
            problems.append(f"r={r} is negative with an empty bank")
        if not _at_most(n, bound):
            problems.append(f"n={n} exceeds E_c = {format_ext(bound)}")

    bounded = None
    if is_first_order(result.type):
        potential = lc_normalize(complexity.potential, fuel, check=False)
        bounded = value_bounded(outcome.value, potential, result.type)
        if not bounded:
            problems.append("value exceeds its extracted potential")

    record = BoundRecord(
        program=program, input=input_label, size=size, bank=format_ext(bank) if bank is INF else bank,
        n=n, r=r, amortized=n + r, bound=format_ext(bound) if bound is INF else bound,
        value_bounded=bounded, verdict="fail" if problems else "pass", detail="; ".join(problems),
    )
    if problems and strict:
        traced = evaluate(term, fuel=fuel, trace=True)
        raise BoundViolation(record, traced.trace)
    return record


# ---------------------------------------------------------------------------
# input enumeration
# ---------------------------------------------------------------------------

def finite_values(ty: LAType) -> List[LATerm]:
    """Every closed value of a finite first-order type."""
    if isinstance(ty, TUnit):
        return [UnitVal()]
    if isinstance(ty, TSum):
        return ([Inl(v, ty.right) for v in finite_values(ty.left)]
                + [Inr(v, ty.left) for v in finite_values(ty.right)])
    if isinstance(ty, TTensor):
        return [Pair(a, b) for a, b in product(finite_values(ty.left), finite_values(ty.right))]
    if isinstance(ty, TBang) and ty.credit.is_closed():
        return [Save(ty.mult, ty.credit, v) for v in finite_values(ty.body)]
    raise ValueError(f"no finite enumeration for values of {ty}")


def enumerate_inputs(ty: LAType, cap: int) -> Iterator[Tuple[LATerm, int]]:
    """(input value, size) pairs: naturals 0..cap, or every list up to length cap."""
    if isinstance(ty, TNat):
        for n in range(cap + 1):
            yield Num(n), n
        return
    if isinstance(ty, TList):
        elems = finite_values(ty.elem)
        for length in range(cap + 1):
            for items in product(elems, repeat=length):
                yield list_literal(items, ty.elem), length
        return
    raise ValueError(f"cannot enumerate inputs of type {ty}")


def describe_input(value: LATerm) -> str:
    if isinstance(value, Num):
        return str(value.value)
    if isinstance(value, (Nil, Cons)):
        items = []
        while isinstance(value, Cons):
            items.append(describe_input(value.head))
            value = value.tail
        return "[" + ",".join(items) + "]"
    if isinstance(value, Inl) and isinstance(value.body, UnitVal):
        return "0"
    if isinstance(value, Inr) and isinstance(value.body, (UnitVal, Save)):
        return "1"
    return format_term(value)


def parse_input_spec(text: str) -> List[Tuple[str, int]]:
    """``inc:8,set:64`` → [("inc", 8), ("set", 64)]."""
    out = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        name, sep, cap = part.partition(":")
        if not sep or not name or not cap.strip().isdigit():
            raise ValueError(f"bad input spec '{part}', expected name:max")
        out.append((name.strip(), int(cap)))
    if not out:
        raise ValueError("empty input spec")
    return out


def verify(program: ProgramFile, specs: Sequence[Tuple[str, int]], fuel: int = DEFAULT_FUEL,
           name: str = "") -> BoundReport:
    """check_bound on every enumerated input of each named definition.

    Inputs carry their own credits (a bit list with k one-bits supplies k),
    so each run is checked at the bank its input requires.
    """
    report = BoundReport(name=name)
    for def_name, cap in specs:
        definition = program.get(def_name)
        if definition is None:
            raise KeyError(def_name)
        arg_ty = getattr(definition.type, "arg", None)
        if arg_ty is None:
            raise ValueError(f"'{def_name}' is not a function")
        fn = program.expand(def_name)
        for value, size in enumerate_inputs(arg_ty, cap):
            report.records.append(check_bound(
                App(fn, value), program=def_name, input_label=describe_input(value), size=size, fuel=fuel))
    return report
