# data_models/credits.py
"""Credit terms and resource terms.

A :class:`CreditTerm` is a formal sum ``a₁α₁ + … + aₙαₙ + ℓ`` over credit
variables. A :class:`ResourceTerm` annotates a typing judgment: one
coefficient per term variable plus a bank, which is itself a credit term.
Both are kept in normal form (sorted, no zero coefficients), so structural
equality is equality of the denoted sums.
"""
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Mapping, Tuple

from data_models.extended import (
    INF, ExtNat, check_nat, ext_add, ext_max, ext_monus, ext_mul, format_ext,
)

Coefficients = Tuple[Tuple[str, ExtNat], ...]


def _normalize(pairs: Iterable[Tuple[str, ExtNat]]) -> Coefficients:
    merged: Dict[str, ExtNat] = {}
    for name, coeff in pairs:
        merged[name] = ext_add(merged.get(name, 0), coeff)
    return tuple(sorted((n, c) for n, c in merged.items() if c != 0))


def _format_sum(coeffs: Coefficients, const: ExtNat) -> str:
    parts = []
    for name, coeff in coeffs:
        parts.append(name if coeff == 1 else f"{format_ext(coeff)}*{name}")
    if const != 0 or not parts:
        parts.append(format_ext(const))
    return "+".join(parts)


@dataclass(frozen=True)
class CreditTerm:
    coeffs: Coefficients = ()
    const: ExtNat = 0

    def __post_init__(self):
        check_nat(self.const, "credit constant")
        for name, coeff in self.coeffs:
            check_nat(coeff, f"coefficient of {name}")
        object.__setattr__(self, "coeffs", _normalize(self.coeffs))

    @classmethod
    def make(cls, coeffs: Mapping[str, ExtNat] = None, const: ExtNat = 0) -> "CreditTerm":
        return cls(tuple((coeffs or {}).items()), const)

    @classmethod
    def var(cls, name: str) -> "CreditTerm":
        return cls(((name, 1),), 0)

    @classmethod
    def constant(cls, value: ExtNat) -> "CreditTerm":
        return cls((), value)

    def coefficient(self, name: str) -> ExtNat:
        for n, c in self.coeffs:
            if n == name:
                return c
        return 0

    @property
    def free_vars(self) -> FrozenSet[str]:
        return frozenset(n for n, _ in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs and self.const == 0

    def is_closed(self) -> bool:
        return not self.coeffs

    def closed_value(self) -> ExtNat:
        if self.coeffs:
            raise ValueError(f"credit term {self} is not closed")
        return self.const

    def plus(self, other: "CreditTerm") -> "CreditTerm":
        return CreditTerm(self.coeffs + other.coeffs, ext_add(self.const, other.const))

    def scale(self, k: ExtNat) -> "CreditTerm":
        return CreditTerm(tuple((n, ext_mul(k, c)) for n, c in self.coeffs), ext_mul(k, self.const))

    def monus(self, other: "CreditTerm") -> "CreditTerm":
        """Coefficient-wise truncated subtraction."""
        names = self.free_vars | other.free_vars
        coeffs = tuple((n, ext_monus(self.coefficient(n), other.coefficient(n))) for n in names)
        return CreditTerm(coeffs, ext_monus(self.const, other.const))

    def join(self, other: "CreditTerm") -> "CreditTerm":
        names = self.free_vars | other.free_vars
        coeffs = tuple((n, ext_max(self.coefficient(n), other.coefficient(n))) for n in names)
        return CreditTerm(coeffs, ext_max(self.const, other.const))

    def leq(self, other: "CreditTerm") -> bool:
        if not self.const <= other.const:
            return False
        return all(c <= other.coefficient(n) for n, c in self.coeffs)

    def without(self, name: str) -> "CreditTerm":
        return CreditTerm(tuple(p for p in self.coeffs if p[0] != name), self.const)

    def subst(self, name: str, replacement: "CreditTerm") -> "CreditTerm":
        coeff = self.coefficient(name)
        if coeff == 0:
            return self
        return self.without(name).plus(replacement.scale(coeff))

    def rename(self, old: str, new: str) -> "CreditTerm":
        return self.subst(old, CreditTerm.var(new))

    def __str__(self) -> str:
        return _format_sum(self.coeffs, self.const)


ZERO_CREDIT = CreditTerm()


@dataclass(frozen=True)
class ResourceTerm:
    uses: Coefficients = ()
    bank: CreditTerm = ZERO_CREDIT

    def __post_init__(self):
        for name, coeff in self.uses:
            check_nat(coeff, f"coefficient of {name}")
        object.__setattr__(self, "uses", _normalize(self.uses))

    @classmethod
    def make(cls, uses: Mapping[str, ExtNat] = None, bank=0) -> "ResourceTerm":
        if not isinstance(bank, CreditTerm):
            bank = CreditTerm.constant(bank)
        return cls(tuple((uses or {}).items()), bank)

    @classmethod
    def single(cls, name: str, coeff: ExtNat = 1) -> "ResourceTerm":
        return cls(((name, coeff),), ZERO_CREDIT)

    @classmethod
    def of_bank(cls, bank) -> "ResourceTerm":
        if not isinstance(bank, CreditTerm):
            bank = CreditTerm.constant(bank)
        return cls((), bank)

    def coefficient(self, name: str) -> ExtNat:
        for n, c in self.uses:
            if n == name:
                return c
        return 0

    @property
    def variables(self) -> FrozenSet[str]:
        return frozenset(n for n, _ in self.uses)

    def is_zero(self) -> bool:
        return not self.uses and self.bank.is_zero()

    def plus(self, other: "ResourceTerm") -> "ResourceTerm":
        return ResourceTerm(self.uses + other.uses, self.bank.plus(other.bank))

    def scale(self, k: ExtNat) -> "ResourceTerm":
        return ResourceTerm(tuple((n, ext_mul(k, c)) for n, c in self.uses), self.bank.scale(k))

    def join(self, other: "ResourceTerm") -> "ResourceTerm":
        names = self.variables | other.variables
        uses = tuple((n, ext_max(self.coefficient(n), other.coefficient(n))) for n in names)
        return ResourceTerm(uses, self.bank.join(other.bank))

    def without(self, name: str) -> "ResourceTerm":
        return ResourceTerm(tuple(p for p in self.uses if p[0] != name), self.bank)

    def with_bank(self, bank: CreditTerm) -> "ResourceTerm":
        return ResourceTerm(self.uses, bank)

    def monus(self, other: "ResourceTerm") -> "ResourceTerm":
        """What ``self`` needs beyond ``other``; zero iff ``self ≤ other``."""
        uses = tuple((n, ext_monus(c, other.coefficient(n))) for n, c in self.uses)
        return ResourceTerm(uses, self.bank.monus(other.bank))

    def subst(self, name: str, replacement: "ResourceTerm") -> "ResourceTerm":
        coeff = self.coefficient(name)
        return self.without(name).plus(replacement.scale(coeff))

    def credit_subst(self, alpha: str, c: CreditTerm) -> "ResourceTerm":
        return ResourceTerm(self.uses, self.bank.subst(alpha, c))

    def leq(self, other: "ResourceTerm") -> bool:
        if not self.bank.leq(other.bank):
            return False
        return all(c <= other.coefficient(n) for n, c in self.uses)

    def __str__(self) -> str:
        parts = [n if c == 1 else f"{format_ext(c)}*{n}" for n, c in self.uses]
        if not self.bank.is_zero() or not parts:
            parts.append(str(self.bank))
        return "+".join(parts)


ZERO_RESOURCES = ResourceTerm()


def resource_subst(g: ResourceTerm, x: str, f: ResourceTerm) -> ResourceTerm:
    """Normalized ``g[f/x]``: the coefficient of x in g scales all of f."""
    return g.subst(x, f)


def resource_leq(f: ResourceTerm, g: ResourceTerm) -> bool:
    return f.leq(g)


def credit_term_subst(c: CreditTerm, alpha: str, replacement: CreditTerm) -> CreditTerm:
    return c.subst(alpha, replacement)


__all__ = [
    "INF", "CreditTerm", "ResourceTerm", "ZERO_CREDIT", "ZERO_RESOURCES",
    "resource_subst", "resource_leq", "credit_term_subst",
]
