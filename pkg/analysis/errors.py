# analysis/errors.py
"""Exception hierarchy. Every failure the toolkit reports is an AmortFlowError."""
from typing import Any, List, Optional, Sequence


class AmortFlowError(Exception):
    """Base class for all toolkit errors."""


class ParseError(AmortFlowError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


# --- λ^A typing ---

class TypeCheckError(AmortFlowError):
    pass


class UnboundVariable(TypeCheckError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound variable '{name}'")


class TypeMismatch(TypeCheckError):
    def __init__(self, rule: str, position: str, expected: Any = None, found: Any = None):
        self.rule = rule
        self.position = position
        self.expected = expected
        self.found = found
        detail = ""
        if expected is not None or found is not None:
            detail = f": expected {expected}, found {found}"
        super().__init__(f"type mismatch in rule '{rule}' at {position}{detail}")


class NonPositiveMultiplicity(TypeCheckError):
    def __init__(self, rule: str, mult: Any):
        self.rule = rule
        self.mult = mult
        super().__init__(f"multiplicity must be positive in '{rule}', got {mult}")


class IllFormedCredit(TypeCheckError):
    def __init__(self, credit: Any, reason: str = "credit variable not in scope"):
        self.credit = credit
        self.reason = reason
        super().__init__(f"ill-formed credit term {credit}: {reason}")


class InsufficientResources(TypeCheckError):
    def __init__(self, required: Any, available: Any, deficit: Any, rule: str = "check"):
        self.required = required
        self.available = available
        self.deficit = deficit
        self.rule = rule
        super().__init__(f"insufficient resources in '{rule}': need {required}, have {available}, missing {deficit}")


# --- evaluation ---

class EvaluationError(AmortFlowError):
    pass


class StuckTerm(EvaluationError):
    def __init__(self, rule: str, term: Any = None):
        self.rule = rule
        self.term = term
        super().__init__(f"evaluation stuck in rule '{rule}'")


class InfiniteCreditOverflow(EvaluationError):
    def __init__(self, rule: str, delta: Any):
        self.rule = rule
        self.delta = delta
        super().__init__(f"credit delta {delta} cannot be scaled in '{rule}' without leaving ℤ")


class FuelExhausted(EvaluationError):
    def __init__(self, fuel: int):
        self.fuel = fuel
        super().__init__(f"evaluation exceeded its budget of {fuel} steps")


# --- λ^C ---

class LCTypeError(AmortFlowError):
    def __init__(self, message: str, term: Any = None):
        self.term = term
        super().__init__(message)


class MalformedCertificate(AmortFlowError):
    def __init__(self, node: Any, reason: str):
        self.node = node
        self.reason = reason
        rule = getattr(node, "rule", "?")
        super().__init__(f"malformed certificate at '{rule}' step: {reason}")


class SemanticError(AmortFlowError):
    pass


# --- harness verdicts ---

class BoundViolation(AmortFlowError):
    def __init__(self, record: Any, trace: Optional[Sequence] = None):
        self.record = record
        self.trace: List = list(trace or [])
        super().__init__(f"bound violated: {record}")


class InvariantViolation(AmortFlowError):
    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"splay invariant violated at {path or 'root'}: {reason}")


class ConfigError(AmortFlowError):
    pass
