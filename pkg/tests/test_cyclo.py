from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from holant_lab.cyclo import (
    I,
    ONE,
    ZERO,
    ZETA,
    CycSyntaxError,
    DivisionByZero,
    ZeroDenominator,
    cyc,
    cyc_parse,
)

from conftest import cyc12s, to_complex


def test_parse_examples():
    assert cyc_parse("2/3-5*i").coeffs == (Fraction(2, 3), 0, 0, -5)
    assert cyc_parse("i") == ZETA**3 == I
    assert cyc_parse("z^4") == ZETA**2 - 1
    with pytest.raises(ZeroDenominator):
        cyc_parse("1/0")


@pytest.mark.parametrize("text", ["", "2+", "i i", "z^", "(1", "1/2/3", "3*"])
def test_parse_rejects(text):
    with pytest.raises(CycSyntaxError):
        cyc_parse(text)


def test_arith_examples():
    assert I * I == -ONE
    half = cyc("1/2")
    assert (half + I) * (half - I) == cyc("5/4")
    assert ZETA**2 * ZETA**2 == ZETA**2 - 1
    with pytest.raises(DivisionByZero):
        ONE / ZERO


def test_reduction_relations():
    assert ZETA**6 == -ONE
    assert ZETA**4 + 1 == ZETA**2
    assert ZETA**12 == ONE


def test_conj_and_norm():
    assert I.conj() == -I
    assert cyc("3/2").conj() == cyc("3/2")
    z = 1 + 2 * ZETA - I
    assert z.conj().conj() == z
    assert (1 + 2 * I).norm_sq() == 5
    assert ZERO.norm_sq() == ZERO
    assert ZETA.norm_sq() == ONE


def test_predicates():
    assert not I.is_real()
    assert (ZETA + ZETA.conj()).is_real()
    assert (-I).is_root_of_unity_12()
    assert not cyc(2).is_root_of_unity_12()


def test_sign_of_real_elements():
    sqrt3 = ZETA + ZETA.conj()  # 2 cos(pi/6)
    assert sqrt3 * sqrt3 == 3
    assert sqrt3.sign() == 1
    assert (sqrt3 - 2).sign() == -1
    assert (sqrt3 - cyc("7/4")).sign() == -1
    assert (sqrt3 - cyc("17/10")).sign() == 1
    assert ZERO.sign() == 0


@given(cyc12s())
def test_print_parse_round_trip(z):
    assert cyc_parse(str(z)) == z


@given(cyc12s(), cyc12s(), cyc12s())
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(cyc12s(nonzero=True))
def test_inverse(x):
    assert x * x.inverse() == ONE
    assert x / x == ONE


@given(cyc12s(), cyc12s())
def test_conj_is_automorphism(x, y):
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x + y).conj() == x.conj() + y.conj()
    assert (x * y).norm_sq() == x.norm_sq() * y.norm_sq()
    assert x.norm_sq().is_real()


@given(cyc12s())
def test_sign_matches_float(x):
    r = x + x.conj()
    value = to_complex(r).real
    if abs(value) > 1e-9:
        assert r.sign() == (1 if value > 0 else -1)


def test_galois_orbit_norm_is_rational():
    z = 1 + 2 * ZETA - 3 * ZETA**2 + I
    assert isinstance(z.field_norm(), Fraction)
    prod = ONE
    for k in (1, 5, 7, 11):
        prod = prod * z.galois(k)
    assert prod == cyc(z.field_norm())
