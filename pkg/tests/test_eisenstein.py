"""Tests for arithmetic in L = Q_p(pi_e) with pi_e**e = -p."""

from fractions import Fraction

import pytest

from padic_cartan.eisenstein import EisensteinElement
from padic_cartan.errors import CosetViolationError, PrecisionError
from padic_cartan.padic import INFINITY, PadicScalar


def exact(value, p=11):
    return PadicScalar.from_rational(value, p, INFINITY)


def test_constructor_validation():
    with pytest.raises(ValueError):
        EisensteinElement(11, 5, [PadicScalar.exact_zero(11)] * 5)
    with pytest.raises(ValueError):
        EisensteinElement(11, 3, [PadicScalar.exact_zero(11)] * 2)
    with pytest.raises(ValueError):
        EisensteinElement(11, 3, [0, 1, 2])
    with pytest.raises(ValueError):
        EisensteinElement(11, 3, [PadicScalar.exact_zero(7)] * 3)


def test_elements_are_immutable():
    x = EisensteinElement.zero(11, 3)
    with pytest.raises(AttributeError):
        x.prime = 13


def test_pi_cubed_is_minus_p():
    pi = EisensteinElement.pi_monomial(exact(1), 1, 3)
    assert (pi**3).as_padic_scalar().lift_fraction() == -11
    assert (pi**6).as_padic_scalar().lift_fraction() == 121


def test_pi_monomial_negative_power():
    inv = EisensteinElement.pi_monomial(exact(1), -1, 3)
    pi = EisensteinElement.pi_monomial(exact(1), 1, 3)
    assert (inv * pi).as_padic_scalar().lift_fraction() == 1
    # pi^-1 = -pi^2/p lands in coordinate 2 with scalar valuation -1.
    assert inv.coords[2].lift_fraction() == Fraction(-1, 11)


def test_pi_monomial_wraps_with_sign():
    m = EisensteinElement.pi_monomial(exact(1), 4, 4)
    assert m.as_padic_scalar().lift_fraction() == -11
    m2 = EisensteinElement.pi_monomial(exact(1), 8, 4)
    assert m2.as_padic_scalar().lift_fraction() == 121


def test_pi_precision_is_min_over_coordinates():
    coords = [
        PadicScalar.from_rational(1, 11, 4),
        PadicScalar.from_rational(1, 11, 2),
        PadicScalar.exact_zero(11),
    ]
    x = EisensteinElement(11, 3, coords)
    assert x.pi_precision() == 7  # min(3*4+0, 3*2+1); exact coords do not bound
    assert EisensteinElement.zero(11, 3).pi_precision() == INFINITY


def test_valuation_visible():
    x = EisensteinElement.pi_monomial(PadicScalar.from_rational(11, 11, 5), 2, 3)
    assert x.valuation() == Fraction(5, 3)
    assert x.valuation_floor() == Fraction(5, 3)


def test_valuation_ambiguous_raises():
    coords = [
        PadicScalar.zero_to_precision(11, 1),
        PadicScalar.from_rational(11**2, 11, 5),
        PadicScalar.exact_zero(11),
    ]
    x = EisensteinElement(11, 3, coords)
    with pytest.raises(PrecisionError):
        x.valuation()
    assert x.valuation_floor() == 1


def test_valuation_of_precision_zero_raises():
    x = EisensteinElement(11, 3, [PadicScalar.zero_to_precision(11, 2)] * 3)
    assert x.is_zero_to_precision()
    assert x.valuation_floor() == 2
    with pytest.raises(PrecisionError):
        x.valuation()


def test_valuation_of_exact_zero_is_infinite():
    assert EisensteinElement.zero(11, 3).valuation() == INFINITY


def test_as_padic_scalar_checks_higher_coordinates():
    x = EisensteinElement.from_rational(7, 11, 3, 4)
    assert x.as_padic_scalar().lift_fraction() == 7
    y = x + EisensteinElement.pi_monomial(exact(1), 1, 3)
    with pytest.raises(CosetViolationError):
        y.as_padic_scalar()


def test_truncate_pi_per_coordinate():
    x = EisensteinElement(11, 3, [PadicScalar.from_rational(1, 11, 9)] * 3)
    t = x.truncate_pi(7)
    assert t.pi_precision() == 7
    assert [c.abs_precision for c in t.coords] == [3, 2, 2]


def test_multiplication_reduces_pi_powers():
    pi = EisensteinElement.pi_monomial(exact(1), 1, 3)
    cube = (1 + pi) ** 3
    # (1 + pi)^3 = 1 + 3 pi + 3 pi^2 + pi^3 = -10 + 3 pi + 3 pi^2
    assert [c.lift_fraction() for c in cube.coords] == [-10, 3, 3]


def test_scalar_operations_broadcast():
    pi = EisensteinElement.pi_monomial(exact(1), 1, 3)
    x = 2 * pi + 1
    assert x.coords[0].lift_fraction() == 1
    assert x.coords[1].lift_fraction() == 2
    assert (x * 3).coords[1].lift_fraction() == 6
    r = 1 - pi
    assert r.coords[0].lift_fraction() == 1
    assert r.coords[1].lift_fraction() == -1
    # A p-free denominator cannot survive exact coordinates.
    with pytest.raises(PrecisionError):
        x - Fraction(1, 2)
    y = EisensteinElement.from_rational(3, 11, 3, 4) * Fraction(1, 2)
    assert y.coords[0].is_congruent(PadicScalar.from_rational(Fraction(3, 2), 11, 4))


def test_mul_pi_power_round_trip():
    x = EisensteinElement(
        11,
        3,
        [
            PadicScalar.from_rational(5, 11, 6),
            PadicScalar.from_rational(7, 11, 6),
            PadicScalar.from_rational(9, 11, 6),
        ],
    )
    back = x.mul_pi_power(5).mul_pi_power(-5)
    for a, b in zip(back.coords, x.coords):
        assert a.lift_fraction() == b.lift_fraction()
        assert a.abs_precision == b.abs_precision
    assert x.mul_pi_power(3) == x * exact(-11)


def test_inverse_round_trip():
    x = EisensteinElement(
        11,
        3,
        [
            PadicScalar.from_rational(2, 11, 5),
            PadicScalar.from_rational(3, 11, 5),
            PadicScalar.exact_zero(11),
        ],
    )
    res = x * x.inverse()
    assert res.is_congruent(1, pi_digits=15)  # full input precision retained


def test_inverse_of_exact_monomial_is_exact():
    m = EisensteinElement.pi_monomial(exact(-11), 4, 3)
    inv = m.inverse()
    assert inv.pi_precision() == INFINITY
    assert (m * inv).as_padic_scalar().lift_fraction() == 1


def test_inverse_of_exact_non_monomial_raises():
    pi = EisensteinElement.pi_monomial(exact(1), 1, 3)
    with pytest.raises(PrecisionError):
        (1 + pi).inverse()


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        EisensteinElement.zero(11, 3).inverse()
    with pytest.raises(PrecisionError):
        EisensteinElement(11, 3, [PadicScalar.zero_to_precision(11, 3)] * 3).inverse()


def test_division_short_circuits_exact_zero_numerator():
    zero = EisensteinElement.zero(11, 3)
    pi = EisensteinElement.pi_monomial(exact(1), 1, 3)
    # The divisor is an exact non-monomial, so inverting it would raise;
    # the zero numerator must win without attempting the inversion.
    q = zero / (1 + pi)
    assert q.is_exact_zero
    with pytest.raises(ZeroDivisionError):
        zero / zero


def test_division_round_trip():
    num = EisensteinElement.from_rational(7, 11, 3, 6)
    den = EisensteinElement(
        11,
        3,
        [
            PadicScalar.from_rational(1, 11, 6),
            PadicScalar.from_rational(4, 11, 6),
            PadicScalar.exact_zero(11),
        ],
    )
    q = num / den
    assert (q * den).is_congruent(num, pi_digits=18)


def test_congruence_windows():
    x = EisensteinElement.from_rational(5, 11, 3, 4)
    y = x + EisensteinElement.pi_monomial(exact(11**2), 1, 3)
    assert x.is_congruent(y, pi_digits=7)
    assert not x.is_congruent(y, pi_digits=8)
    assert x.is_congruent(5)


def test_equality_is_congruence():
    x = EisensteinElement.from_rational(5, 11, 3, 2)
    assert x == 5 + 2 * 11**2
    assert x != 6


def test_repr_forms():
    assert repr(EisensteinElement.zero(11, 3)) == "0"
    assert repr(EisensteinElement.pi_monomial(exact(20), 2, 3)) == "20*pi^2"
    x = EisensteinElement(
        11,
        3,
        [
            PadicScalar.exact_zero(11),
            PadicScalar.from_rational(2, 11, 1),
            PadicScalar.exact_zero(11),
        ],
    )
    assert repr(x) == "(2 + O(11^1))*pi"
    pz = EisensteinElement(11, 3, [PadicScalar.zero_to_precision(11, 1)] * 3)
    assert repr(pz) == "O(11^1) + O(11^1)*pi + O(11^1)*pi^2"


def test_embedding_matches_target_precision():
    s = EisensteinElement.from_rational(5, 11, 3, 2) + 1
    assert s.coords[0].abs_precision == 2
    t = EisensteinElement.zero(11, 3) + Fraction(1, 11)
    assert t.coords[0].abs_precision == INFINITY
    u = EisensteinElement.zero(11, 3) + PadicScalar.from_rational(3, 11, 4)
    assert u.coords[0].abs_precision == 4
