from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from strongflow.values import INF, InfinityArithmeticError, as_value, format_value, is_inf

fractions = st.fractions(min_value=0, max_value=10 ** 6)


def test_infinity_absorbs_addition_and_dominates():
    assert INF + Fraction(3) is INF
    assert Fraction(3) + INF is INF
    assert INF - Fraction(5) is INF
    assert Fraction(10 ** 30) < INF
    assert not INF < INF and INF <= INF and INF == INF


def test_undefined_infinity_arithmetic_raises():
    with pytest.raises(InfinityArithmeticError):
        INF - INF
    with pytest.raises(InfinityArithmeticError):
        Fraction(1) - INF
    with pytest.raises(InfinityArithmeticError):
        INF * 0


def test_parsing_and_formatting():
    assert as_value("*") is INF
    assert as_value("3/6") == Fraction(1, 2)
    assert as_value(4) == Fraction(4)
    assert format_value(Fraction(3)) == "3/1"
    assert format_value(INF) == "*"
    assert is_inf(INF) and not is_inf(Fraction(0))


@given(fractions, fractions)
def test_exact_round_trip(a, b):
    assert a + b - b == a
    assert as_value(format_value(a)) == a
    assert min(a, INF) == a and max(b, INF) is INF
