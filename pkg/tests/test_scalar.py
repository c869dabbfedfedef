from fractions import Fraction

import pytest

from qsp_kmatrix.core.scalar import ScalarField
from qsp_kmatrix.exceptions import ScalarError


@pytest.fixture(scope="module")
def F():
    return ScalarField(1)


def test_parse_and_arithmetic(F):
    assert F.wrap("q^2-1") / F.wrap("q-1") == F.wrap("q+1")
    assert F.wrap("q") * F.wrap("q^(-1)") == 1
    assert F.wrap("(q^2-1)/(q+1)") - F.wrap("q") == -1


def test_qint_text(F):
    assert F.wrap(F.qint(3)).to_text() == "q^2 + 1 + q^(-2)"
    assert F.wrap(F.qint(-2)) == -F.wrap(F.qint(2))
    assert F.wrap(F.qint(0)) == 0


def test_qbinom(F):
    assert F.wrap(F.qbinom(4, 2)).to_text() == "q^4 + q^2 + 2 + q^(-2) + q^(-4)"
    assert F.wrap(F.qbinom(3, 5)) == 0
    with pytest.raises(ScalarError):
        F.qbinom(-1, 0)


def test_qint_with_symmetrizer(F):
    # [2]_{q^2} = q^2 + q^-2
    assert F.wrap(F.qint(2, 2)) == F.wrap("q^2 + q^(-2)")


def test_bar_is_involution(F):
    a = F.wrap("(q^3 - 2*q)/(q^2 + 5)")
    assert a.bar().bar() == a
    assert F.wrap("q").bar() == F.wrap("q^(-1)")
    assert F.wrap("q + q^(-1)").bar() == F.wrap("q + q^(-1)")


def test_text_roundtrip_for_rational_function(F):
    a = F.wrap("(q^2 - 1)/(q^3 + 2)")
    assert F.wrap(a.to_text()) == a


def test_fractional_powers():
    F2 = ScalarField(2)
    half = F2.wrap("q^(1/2)")
    assert half * half == F2.wrap("q")
    assert F2.wrap(half.to_text()) == half
    with pytest.raises(ScalarError):
        ScalarField(1).q_pow(Fraction(1, 2))


def test_mixing_fields_is_rejected():
    a, b = ScalarField(1).wrap(1), ScalarField(2).wrap(1)
    with pytest.raises(ScalarError):
        a + b
    assert a != b


@pytest.mark.parametrize("text", ["", "x + 1", "q**", "import os"])
def test_bad_syntax(F, text):
    with pytest.raises(ScalarError):
        F.wrap(text)


def test_division_by_zero(F):
    with pytest.raises(ScalarError):
        F.wrap(1) / F.wrap(0)
    with pytest.raises(ScalarError):
        F.wrap(0) ** -1


def test_evaluate(F):
    assert F.wrap("q + 1").evaluate(Fraction(2)) == 3
    assert F.wrap("1/(q-1)").evaluate(Fraction(3)) == Fraction(1, 2)
    with pytest.raises(ScalarError):
        F.wrap("1/(q-1)").evaluate(Fraction(1))


def test_scalar_is_immutable_and_hashable(F):
    a = F.wrap("q")
    with pytest.raises(AttributeError):
        a.raw = None
    assert len({F.wrap("q^2-1") / F.wrap("q-1"), F.wrap("q+1")}) == 1


def test_invalid_d():
    with pytest.raises(ScalarError):
        ScalarField(0)
