import pytest
from fractions import Fraction

from surfsplit.quadorders import (class_number, class_number_forms,
                                  class_number_table, decompose,
                                  hurwitz_weighted_h, kronecker_class_number)

# h(D) for fundamental D, from the standard tables
KNOWN_H = {-3: 1, -4: 1, -7: 1, -8: 1, -11: 1, -15: 2, -20: 2, -23: 3,
           -31: 3, -47: 5, -71: 7, -84: 4, -163: 1, -231: 12}


def test_known_class_numbers():
    for d, h in KNOWN_H.items():
        assert class_number(d) == h
        assert class_number_forms(d) == h


def test_conductor_formula_matches_forms():
    for delta in range(-2000, -2):
        if delta % 4 in (0, 1):
            assert class_number(delta) == class_number_forms(delta), delta


def test_decompose():
    d = decompose(-48)
    assert (d.fundamental, d.conductor) == (-3, 4)
    d = decompose(-300)
    assert (d.fundamental, d.conductor) == (-3, 10)
    assert decompose(-67).conductor == 1


def test_kronecker_class_number():
    # H(-12) = h(-12) + h(-3) = 1 + 1
    assert kronecker_class_number(-12) == 2
    # H(-36) = h(-36) + h(-9)?  -9 is not a discriminant; conductor of -36 is 3
    assert kronecker_class_number(-36) == class_number(-36) + class_number(-4)
    for delta in range(-500, -2):
        if delta % 4 in (0, 1):
            d = decompose(delta)
            want = sum(class_number(g * g * d.fundamental)
                       for g in _divs(d.conductor))
            assert kronecker_class_number(delta) == want


def _divs(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def test_hurwitz_weights():
    assert hurwitz_weighted_h(-3) == Fraction(1, 3)
    assert hurwitz_weighted_h(-4) == Fraction(1, 2)
    assert hurwitz_weighted_h(-23) == 3


def test_class_number_table_agrees():
    t = class_number_table(3000)
    for delta in range(-3000, -2):
        if delta % 4 in (0, 1):
            assert int(t[-delta]) == class_number_forms(delta), delta


def test_invalid_discriminants():
    for bad in (5, 0, -1, -2, -5):
        with pytest.raises(ValueError):
            class_number(bad)
