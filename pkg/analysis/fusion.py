# analysis/fusion.py
"""Closed witnesses for both directions of the three fusion laws.

  !^{k1 k2}_{l1 + k1 l2} A  ⊣⊢  !^{k1}_{l1} !^{k2}_{l2} A
  !^k_{l1 + l2} (A ⊗ B)     ⊣⊢  !^k_{l1} A ⊗ !^k_{l2} B
  !^k_l (A ⊕ B)             ⊣⊢  !^k_l A ⊕ !^k_l B
"""
from dataclasses import dataclass
from typing import List, Tuple

from data_models.credits import CreditTerm
from data_models.la_syntax import (
    NAT_T, UNIT_T, Case, Inl, Inr, LAType, LATerm, Lam, LetPair, Pair, Save, TBang, TLolli,
    TSum, TTensor, Transfer, Var,
)

LAW_BANG = "bang-bang"
LAW_TENSOR = "bang-tensor"
LAW_SUM = "bang-sum"

# (k1, k2, l1, l2), (k, l1, l2), (k, l)
BANG_INSTANCES = ((2, 1, 1, 1), (1, 2, 0, 2), (2, 2, 2, 1))
TENSOR_INSTANCES = ((1, 1, 1), (2, 0, 2), (1, 2, 0))
SUM_INSTANCES = ((1, 0), (2, 1), (1, 2))


@dataclass(frozen=True)
class FusionWitness:
    law: str
    direction: str
    params: Tuple[int, ...]
    term: LATerm
    type: LAType


def _c(n: int) -> CreditTerm:
    return CreditTerm.constant(n)


def _bang_law(k1, k2, l1, l2, a: LAType) -> List[FusionWitness]:
    fused = TBang(k1 * k2, _c(l1 + k1 * l2), a)
    nested = TBang(k1, _c(l1), TBang(k2, _c(l2), a))
    split = Lam("x", fused, Transfer("y", Var("x"), Save(k1, _c(l1), Save(k2, _c(l2), Var("y")))))
    join = Lam("x", nested, Transfer("y", Var("x"), Transfer(
        "z", Var("y"), Save(k1 * k2, _c(l1 + k1 * l2), Var("z")), mult=k1)))
    params = (k1, k2, l1, l2)
    return [
        FusionWitness(LAW_BANG, "split", params, split, TLolli(fused, nested)),
        FusionWitness(LAW_BANG, "join", params, join, TLolli(nested, fused)),
    ]


def _tensor_law(k, l1, l2, a: LAType, b: LAType) -> List[FusionWitness]:
    whole = TBang(k, _c(l1 + l2), TTensor(a, b))
    parts = TTensor(TBang(k, _c(l1), a), TBang(k, _c(l2), b))
    split = Lam("x", whole, Transfer("p", Var("x"), LetPair(
        "a", "b", Var("p"), Pair(Save(k, _c(l1), Var("a")), Save(k, _c(l2), Var("b"))), mult=k)))
    join = Lam("x", parts, LetPair("u", "v", Var("x"), Transfer("a", Var("u"), Transfer(
        "b", Var("v"), Save(k, _c(l1 + l2), Pair(Var("a"), Var("b")))))))
    params = (k, l1, l2)
    return [
        FusionWitness(LAW_TENSOR, "split", params, split, TLolli(whole, parts)),
        FusionWitness(LAW_TENSOR, "join", params, join, TLolli(parts, whole)),
    ]


def _sum_law(k, l, a: LAType, b: LAType) -> List[FusionWitness]:
    ba, bb = TBang(k, _c(l), a), TBang(k, _c(l), b)
    whole = TBang(k, _c(l), TSum(a, b))
    parts = TSum(ba, bb)
    split = Lam("x", whole, Transfer("s", Var("x"), Case(
        Var("s"),
        "a", Inl(Save(k, _c(l), Var("a")), bb),
        "b", Inr(Save(k, _c(l), Var("b")), ba),
        mult=k)))
    join = Lam("x", parts, Case(
        Var("x"),
        "u", Transfer("a", Var("u"), Save(k, _c(l), Inl(Var("a"), b))),
        "v", Transfer("b", Var("v"), Save(k, _c(l), Inr(Var("b"), a)))))
    params = (k, l)
    return [
        FusionWitness(LAW_SUM, "split", params, split, TLolli(whole, parts)),
        FusionWitness(LAW_SUM, "join", params, join, TLolli(parts, whole)),
    ]


def fusion_witnesses(a: LAType = NAT_T, b: LAType = UNIT_T) -> List[FusionWitness]:
    """Six witnesses (three laws, two directions) at each representative instantiation."""
    out: List[FusionWitness] = []
    for params in BANG_INSTANCES:
        out.extend(_bang_law(*params, a))
    for params in TENSOR_INSTANCES:
        out.extend(_tensor_law(*params, a, b))
    for params in SUM_INSTANCES:
        out.extend(_sum_law(*params, a, b))
    return out
