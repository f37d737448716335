# analysis/leq.py
"""Certificates for the syntactic ordering E ≤ E′ on λ^C, and a β-simplifier
that produces them.

A certificate is a tree of rule applications. ``leq_check`` validates the
tree bottom-up; ``beta_simplify`` shrinks a term along certifiable positions
and returns the simplified term with a certificate that it lies below the
original.
"""
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, Optional, Tuple

from analysis.errors import AmortFlowError, MalformedCertificate
from analysis.lc_typecheck import lc_typecheck
from analysis.normalize import lc_normalize
from data_models.lc_syntax import (
    LC, CAdd, CApp, CCase, CConst, CCons, CEmp, CFst, CInl, CInr, CLam, CListRec, CMax, CNatRec,
    CNeg, CNil, CNode, CNum, CPair, CPrim, CScale, CSnd, CSucc, CTreeRec, CVar, DAdd, DConst,
    LCTerm, LCType, ToCost, alpha_equal,
)

RULES = ("refl", "trans", "beta", "cong", "arith", "max_left", "max_right", "max_lub")

# positions where the ordering is a congruence: every field of an introduction
# form or monotone operation, the principal field of an elimination form
CONGRUENCE_POSITIONS: Dict[type, Tuple[str, ...]] = {
    CLam: ("body",),
    CPair: ("left", "right"),
    CInl: ("body",),
    CInr: ("body",),
    CSucc: ("body",),
    CCons: ("head", "tail"),
    CNode: ("label", "size", "left", "right"),
    CAdd: ("left", "right"),
    CMax: ("left", "right"),
    CScale: ("body",),
    DAdd: ("left", "right"),
    ToCost: ("body",),
    CApp: ("fn",),
    CFst: ("body",),
    CSnd: ("body",),
    CCase: ("scrutinee",),
    CNatRec: ("scrutinee",),
    CListRec: ("scrutinee",),
    CTreeRec: ("scrutinee",),
}
MONOTONE_PRIMS = ("add", "phi", "dup")
ARITH_NODES = (CConst, DConst, CAdd, CMax, CScale, CNeg, DAdd, ToCost)
INLINE_SIZE = 6


@dataclass(frozen=True)
class LeqCertificate:
    rule: str
    lhs: LCTerm
    rhs: LCTerm
    premises: Tuple["LeqCertificate", ...] = field(default=())
    position: Optional[str] = None

    @property
    def depth(self) -> int:
        return 1 + max((p.depth for p in self.premises), default=0)


def refl(e: LCTerm) -> LeqCertificate:
    return LeqCertificate("refl", e, e)


def trans(first: LeqCertificate, second: LeqCertificate) -> LeqCertificate:
    """first: E₁ ≤ E₂, second: E₂ ≤ E₃ gives E₁ ≤ E₃."""
    return LeqCertificate("trans", first.lhs, second.rhs, (first, second))


def cong(position: str, outer_lhs: LCTerm, outer_rhs: LCTerm, premise: LeqCertificate) -> LeqCertificate:
    return LeqCertificate("cong", outer_lhs, outer_rhs, (premise,), position)


# ---------------------------------------------------------------------------
# Head contraction
# ---------------------------------------------------------------------------

def _tree_view(node: CNode, branches: Tuple[LCTerm, ...]) -> LCTerm:
    def suspended(sub):
        return CPair(sub, CTreeRec(sub, *branches))
    return CPair(node.label, CPair(node.size, CPair(suspended(node.left), suspended(node.right))))


def contract(e: LCTerm) -> Optional[LCTerm]:
    """One head β/ι step, or None when ``e`` is not a head redex."""
    if isinstance(e, CApp) and isinstance(e.fn, CLam):
        return LC.substitute(e.fn.body, e.fn.var, e.arg)
    if isinstance(e, CFst) and isinstance(e.body, CPair):
        return e.body.left
    if isinstance(e, CSnd) and isinstance(e.body, CPair):
        return e.body.right
    if isinstance(e, CCase) and isinstance(e.scrutinee, CInl):
        return LC.substitute(e.left, e.left_var, e.scrutinee.body)
    if isinstance(e, CCase) and isinstance(e.scrutinee, CInr):
        return LC.substitute(e.right, e.right_var, e.scrutinee.body)
    if isinstance(e, CNatRec) and isinstance(e.scrutinee, CNum) and isinstance(e.scrutinee.value, int):
        k = e.scrutinee.value
        if k == 0:
            return e.base
        pred = CNum(k - 1)
        return CApp(e.step, CPair(pred, CNatRec(pred, e.base, e.step)))
    if isinstance(e, CNatRec) and isinstance(e.scrutinee, CSucc):
        pred = e.scrutinee.body
        return CApp(e.step, CPair(pred, CNatRec(pred, e.base, e.step)))
    if isinstance(e, CListRec) and isinstance(e.scrutinee, CNil):
        return e.base
    if isinstance(e, CListRec) and isinstance(e.scrutinee, CCons):
        cell = e.scrutinee
        return CApp(e.step, CPair(cell.head, CPair(cell.tail, CListRec(cell.tail, e.base, e.step))))
    if isinstance(e, CTreeRec) and isinstance(e.scrutinee, CEmp):
        return e.empty
    if isinstance(e, CTreeRec) and isinstance(e.scrutinee, CNode):
        node = e.scrutinee
        branches = (e.empty, e.leaf, e.left_empty, e.right_empty, e.both)
        left_is_node = isinstance(node.left, CNode)
        right_is_node = isinstance(node.right, CNode)
        if not (left_is_node or isinstance(node.left, CEmp)) or not (right_is_node or isinstance(node.right, CEmp)):
            return None
        if not left_is_node and not right_is_node:
            return CApp(e.leaf, CPair(node.label, node.size))
        if not left_is_node:
            return CApp(e.left_empty, CPair(node.label, CPair(node.size, _tree_view(node.right, branches))))
        if not right_is_node:
            return CApp(e.right_empty, CPair(node.label, CPair(node.size, _tree_view(node.left, branches))))
        views = CPair(_tree_view(node.left, branches), _tree_view(node.right, branches))
        return CApp(e.both, CPair(node.label, CPair(node.size, views)))
    return None


def _is_closed_arith(e: LCTerm) -> bool:
    return not e.free_vars and _only_arith(e)


def _only_arith(e: LCTerm) -> bool:
    if not isinstance(e, ARITH_NODES):
        return False
    return all(_only_arith(child) for _, child in LC.children(e))


def _fold(e: LCTerm) -> Optional[LCTerm]:
    """The constant a closed arithmetic term evaluates to."""
    result = lc_normalize(e, check=False)
    return result if isinstance(result, (CConst, DConst)) else None


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------

class CertificateChecker:
    def validate(self, cert: LeqCertificate) -> None:
        handler = getattr(self, f"_check_{cert.rule}", None)
        if handler is None:
            raise MalformedCertificate(cert, f"unknown rule '{cert.rule}'")
        handler(cert)

    def _premises(self, cert: LeqCertificate, count: int) -> Tuple[LeqCertificate, ...]:
        if len(cert.premises) != count:
            raise MalformedCertificate(cert, f"expected {count} premise(s), got {len(cert.premises)}")
        for p in cert.premises:
            self.validate(p)
        return cert.premises

    def _check_refl(self, cert):
        self._premises(cert, 0)
        if not alpha_equal(cert.lhs, cert.rhs):
            raise MalformedCertificate(cert, "sides are not α-equivalent")

    def _check_trans(self, cert):
        first, second = self._premises(cert, 2)
        if not alpha_equal(first.lhs, cert.lhs) or not alpha_equal(second.rhs, cert.rhs):
            raise MalformedCertificate(cert, "premises do not span the conclusion")
        if not alpha_equal(first.rhs, second.lhs):
            raise MalformedCertificate(cert, "premises do not meet in the middle")

    def _check_beta(self, cert):
        self._premises(cert, 0)
        reduct = contract(cert.rhs)
        if reduct is None:
            raise MalformedCertificate(cert, "right-hand side is not a redex")
        if not alpha_equal(reduct, cert.lhs):
            raise MalformedCertificate(cert, "left-hand side is not the contractum")

    def _check_cong(self, cert):
        (premise,) = self._premises(cert, 1)
        lhs, rhs, pos = cert.lhs, cert.rhs, cert.position
        if type(lhs) is not type(rhs):
            raise MalformedCertificate(cert, "sides have different head constructors")
        if isinstance(lhs, CPrim):
            self._check_prim_cong(cert, premise)
            return
        allowed = CONGRUENCE_POSITIONS.get(type(lhs), ())
        if pos not in allowed:
            raise MalformedCertificate(cert, f"'{pos}' is not a congruence position of {type(lhs).__name__}")
        for name in LC.fields_of(type(lhs)):
            if name == pos:
                continue
            a, b = getattr(lhs, name), getattr(rhs, name)
            same = alpha_equal(a, b) if isinstance(a, LCTerm) else a == b
            if not same:
                raise MalformedCertificate(cert, f"sides differ outside position '{pos}' (at '{name}')")
        if not alpha_equal(premise.lhs, getattr(lhs, pos)) or not alpha_equal(premise.rhs, getattr(rhs, pos)):
            raise MalformedCertificate(cert, "premise does not match the position")

    def _check_prim_cong(self, cert, premise):
        lhs, rhs = cert.lhs, cert.rhs
        if lhs.op != rhs.op or lhs.op not in MONOTONE_PRIMS:
            raise MalformedCertificate(cert, f"primitive '{lhs.op}' is not monotone")
        try:
            index = int((cert.position or "").split(".")[1])
        except (IndexError, ValueError):
            raise MalformedCertificate(cert, f"bad primitive position '{cert.position}'")
        if len(lhs.args) != len(rhs.args) or not 0 <= index < len(lhs.args):
            raise MalformedCertificate(cert, "argument index out of range")
        for i, (a, b) in enumerate(zip(lhs.args, rhs.args)):
            if i != index and not alpha_equal(a, b):
                raise MalformedCertificate(cert, f"arguments differ at {i}")
        if not alpha_equal(premise.lhs, lhs.args[index]) or not alpha_equal(premise.rhs, rhs.args[index]):
            raise MalformedCertificate(cert, "premise does not match the argument")

    def _check_arith(self, cert):
        self._premises(cert, 0)
        if not (_is_closed_arith(cert.lhs) and _is_closed_arith(cert.rhs)):
            raise MalformedCertificate(cert, "arith needs closed constant expressions")
        try:
            a, b = _fold(cert.lhs), _fold(cert.rhs)
        except AmortFlowError as exc:
            raise MalformedCertificate(cert, f"cannot evaluate: {exc}")
        if a is None or b is None or type(a) is not type(b) or not a.value <= b.value:
            raise MalformedCertificate(cert, f"{a} ≤ {b} does not hold")

    def _check_max_left(self, cert):
        self._premises(cert, 0)
        if not (isinstance(cert.rhs, CMax) and alpha_equal(cert.rhs.left, cert.lhs)):
            raise MalformedCertificate(cert, "expected E ≤ E ∨ E′")

    def _check_max_right(self, cert):
        self._premises(cert, 0)
        if not (isinstance(cert.rhs, CMax) and alpha_equal(cert.rhs.right, cert.lhs)):
            raise MalformedCertificate(cert, "expected E′ ≤ E ∨ E′")

    def _check_max_lub(self, cert):
        left, right = self._premises(cert, 2)
        if not isinstance(cert.lhs, CMax):
            raise MalformedCertificate(cert, "left-hand side must be a max")
        if not alpha_equal(left.lhs, cert.lhs.left) or not alpha_equal(right.lhs, cert.lhs.right):
            raise MalformedCertificate(cert, "premises must bound each side of the max")
        if not alpha_equal(left.rhs, cert.rhs) or not alpha_equal(right.rhs, cert.rhs):
            raise MalformedCertificate(cert, "premises must share the upper bound")


def leq_check(cert: LeqCertificate, lhs: LCTerm, rhs: LCTerm, ty: Optional[LCType] = None,
              ctx: Optional[Dict[str, LCType]] = None) -> bool:
    """True when ``cert`` derives lhs ≤ rhs (at ``ty`` when given).

    A certificate for a different conclusion gives False; a certificate that
    is internally invalid raises MalformedCertificate.
    """
    if not alpha_equal(cert.lhs, lhs) or not alpha_equal(cert.rhs, rhs):
        return False
    if ty is not None:
        env = ctx or {}
        if lc_typecheck(env, lhs) != ty or lc_typecheck(env, rhs) != ty:
            return False
    CertificateChecker().validate(cert)
    return True


# ---------------------------------------------------------------------------
# Simplification
# ---------------------------------------------------------------------------

class BetaSimplifier:
    def __init__(self, fuel: int = 10_000, inline_size: int = INLINE_SIZE):
        self.fuel = fuel
        self.inline_size = inline_size

    def _should_contract(self, e: LCTerm) -> bool:
        if isinstance(e, (CFst, CSnd)):
            return isinstance(e.body, CPair)
        if isinstance(e, CApp) and isinstance(e.fn, CLam):
            return self._cheap(e.fn.body, e.fn.var, e.arg)
        if isinstance(e, CCase) and isinstance(e.scrutinee, (CInl, CInr)):
            if isinstance(e.scrutinee, CInl):
                return self._cheap(e.left, e.left_var, e.scrutinee.body)
            return self._cheap(e.right, e.right_var, e.scrutinee.body)
        if isinstance(e, CNatRec) and e.scrutinee == CNum(0):
            return True
        if isinstance(e, CListRec) and isinstance(e.scrutinee, CNil):
            return True
        if isinstance(e, CTreeRec) and isinstance(e.scrutinee, CEmp):
            return True
        return False

    def _cheap(self, body: LCTerm, var: str, arg: LCTerm) -> bool:
        return LC.count_free(body, var) <= 1 or LC.size(arg) <= self.inline_size

    def step(self, e: LCTerm) -> Optional[Tuple[LCTerm, LeqCertificate]]:
        """One simplification pass, or None when nothing changes."""
        if self.fuel <= 0:
            return None
        if self._should_contract(e):
            self.fuel -= 1
            reduct = contract(e)
            return reduct, LeqCertificate("beta", reduct, e)
        if _is_closed_arith(e) and not isinstance(e, (CConst, DConst)):
            folded = _fold(e)
            if folded is not None:
                self.fuel -= 1
                return folded, LeqCertificate("arith", folded, e)
        return self._step_inside(e)

    def _step_inside(self, e: LCTerm) -> Optional[Tuple[LCTerm, LeqCertificate]]:
        if isinstance(e, CPrim):
            positions = tuple(f"args.{i}" for i in range(len(e.args))) if e.op in MONOTONE_PRIMS else ()
        else:
            positions = CONGRUENCE_POSITIONS.get(type(e), ())
        current, cert = e, None
        for pos in positions:
            child = _get(current, pos)
            inner = self.step(child)
            if inner is None:
                continue
            new_child, child_cert = inner
            rebuilt = _set(current, pos, new_child)
            step_cert = cong(pos, rebuilt, current, child_cert)
            cert = step_cert if cert is None else trans(step_cert, cert)
            current = rebuilt
        if cert is None:
            return None
        return current, cert

    def simplify(self, e: LCTerm) -> Tuple[LCTerm, LeqCertificate]:
        current, cert = e, refl(e)
        while True:
            result = self.step(current)
            if result is None:
                return current, cert
            current, step_cert = result
            cert = step_cert if cert.rule == "refl" else trans(step_cert, cert)


def _get(e: LCTerm, pos: str) -> LCTerm:
    if pos.startswith("args."):
        return e.args[int(pos.split(".")[1])]
    return getattr(e, pos)


def _set(e: LCTerm, pos: str, value: LCTerm) -> LCTerm:
    if pos.startswith("args."):
        index = int(pos.split(".")[1])
        args = e.args[:index] + (value,) + e.args[index + 1:]
        return replace(e, args=args)
    return replace(e, **{pos: value})


def beta_simplify(e: LCTerm, fuel: int = 10_000) -> Tuple[LCTerm, LeqCertificate]:
    """Simplified term E′ and a certificate for E′ ≤ E."""
    return BetaSimplifier(fuel).simplify(e)


def certificate_rules(cert: LeqCertificate) -> Iterable[str]:
    stack = [cert]
    while stack:
        current = stack.pop()
        yield current.rule
        stack.extend(current.premises)
