# data_models/extended.py
"""Extended naturals and integers (ℕ ∪ {∞}, ℤ ∪ {∞}).

Both domains are plain Python ints plus the singleton ``INF``. ``INF``
compares above every integer, so ``max``/``sorted``/``<=`` work unchanged;
multiplication must go through :func:`ext_mul` because ``∞ · 0 = 0``.
"""
from typing import Union


class Infinity:
    """The top element shared by every extended domain."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("amortflow.INF")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()

ExtNat = Union[int, Infinity]
ExtInt = Union[int, Infinity]


def is_inf(value) -> bool:
    return value is INF


def ext_add(a: ExtInt, b: ExtInt) -> ExtInt:
    if a is INF or b is INF:
        return INF
    return a + b


def ext_mul(k: ExtInt, m: ExtInt) -> ExtInt:
    """Multiplication with ∞·0 = 0 and ∞·k = ∞ for k > 0.

    A negative finite operand against ∞ yields 0: ℤ∪{∞} has no −∞, and 0 is
    the least element above every ∞-scaled loss.
    """
    if k is INF or m is INF:
        other = m if k is INF else k
        if other is INF or other > 0:
            return INF
        return 0
    return k * m


def ext_max(a: ExtInt, b: ExtInt) -> ExtInt:
    if a is INF or b is INF:
        return INF
    return a if a >= b else b


def ext_min(a: ExtInt, b: ExtInt) -> ExtInt:
    if a is INF:
        return b
    if b is INF:
        return a
    return a if a <= b else b


def ext_monus(a: ExtNat, b: ExtNat) -> ExtNat:
    """Truncated subtraction on ExtNat: the least d with d + b ≥ a."""
    if b is INF:
        return 0
    if a is INF:
        return INF
    return a - b if a > b else 0


def ext_neg(a: ExtInt) -> ExtInt:
    # ∞ absorbs negation: the domain only has a top element.
    if a is INF:
        return INF
    return -a


def check_nat(value, what: str = "value") -> ExtNat:
    if value is INF:
        return value
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ValueError(f"{what} must be a natural number or inf, got {value!r}")
    return value


def parse_ext(text: str) -> ExtInt:
    token = text.strip()
    if token in ("inf", "∞"):
        return INF
    return int(token)


def format_ext(value: ExtInt) -> str:
    return "inf" if value is INF else str(value)
