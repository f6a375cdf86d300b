"""Exact capacity and flow values: rationals plus a tagged infinity."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class InfinityArithmeticError(ArithmeticError):
    """Raised for undefined operations such as inf - inf."""


class _Infinity:
    """Positive infinity that compares above every finite value.

    Fraction defers to the reflected methods for unknown operand types,
    so mixed expressions like ``Fraction(3) + INF`` and ``Fraction(3) < INF``
    dispatch here.
    """

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "*"

    def __hash__(self):
        return hash("strongflow-infinity")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise InfinityArithmeticError("inf - inf is undefined")
        return self

    def __rsub__(self, other):
        raise InfinityArithmeticError("finite - inf is negative infinity, which is not a value")

    def __mul__(self, other):
        if other is self:
            return self
        if other > 0:
            return self
        raise InfinityArithmeticError("inf * %r is undefined" % (other,))

    __rmul__ = __mul__

    def __neg__(self):
        raise InfinityArithmeticError("negative infinity is not a value")


INF = _Infinity()

Value = "Fraction | _Infinity"


def is_inf(x) -> bool:
    return x is INF


def as_value(x):
    """Coerce ints, Fractions, decimal strings, ``"a/b"`` and ``"*"`` to a Value."""
    if x is INF:
        return INF
    if isinstance(x, str):
        x = x.strip()
        if x in ("*", "inf", "INF"):
            return INF
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, float):
        if x == float("inf"):
            return INF
        return Fraction(x)
    raise TypeError("cannot interpret %r as a value" % (x,))


def format_value(x) -> str:
    """Render as ``*`` or ``num/den``."""
    if x is INF:
        return "*"
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator)

