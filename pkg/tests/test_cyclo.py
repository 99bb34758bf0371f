from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ggcs.cyclo import (
    ConductorMismatchError,
    Cyclotomic,
    InvalidConductorError,
    cyclotomic_polynomial,
    totient,
    zeta,
)
from strategies import conductor_and_elements, cyclotomics


def test_small_roots():
    assert zeta(1) == 1
    assert zeta(2) == -1
    z = zeta(3)
    assert z**3 == 1
    assert 1 + z + z**2 == 0


def test_zero_conductor_rejected():
    with pytest.raises(InvalidConductorError):
        zeta(0)


@pytest.mark.parametrize("k", range(2, 13))
def test_root_of_unity_identities(k):
    z = zeta(k)
    assert z**k == 1
    assert sum((z**i for i in range(k)), Cyclotomic.rational(k, 0)) == 0
    assert len(z.coeffs) == totient(k)


def test_known_cyclotomic_polynomials():
    # independently known small cases
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert cyclotomic_polynomial(9) == (1, 0, 0, 1, 0, 0, 1)


def test_field_examples():
    i = zeta(4)
    assert i * i == -1
    assert 1 / zeta(3) == zeta(3) ** 2
    assert zeta(3).conjugate() == zeta(3) ** 2
    assert Cyclotomic.rational(7, Fraction(3, 5)).conjugate() == Fraction(3, 5)


def test_embed_examples():
    assert zeta(4).embed() == pytest.approx(1j)
    assert zeta(3).embed() == pytest.approx(cmath.exp(2j * cmath.pi / 3), abs=1e-15)
    assert Cyclotomic.rational(5, 0).embed() == 0


def test_mismatched_conductors():
    with pytest.raises(ConductorMismatchError):
        zeta(3) + zeta(5)
    # rationals cross conductors freely
    assert Cyclotomic.rational(3, 2) == Cyclotomic.rational(5, 2)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        zeta(5) / Cyclotomic.rational(5, 0)


def test_galois_and_norm():
    z = zeta(5)
    assert z.galois(2) == z**2
    # norm of 1 - zeta_p is p for prime p
    assert (1 - z).norm() == 5
    assert (1 - zeta(7)).norm() == 7


@settings(max_examples=300)
@given(conductor_and_elements())
def test_ring_axioms(data):
    _, x, y, z = data
    assert (x * y) * z == x * (y * z)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@settings(max_examples=300)
@given(conductor_and_elements(count=1, nonzero=True))
def test_inverse(data):
    _, x = data
    assert x * x.inverse() == 1
    assert x / x == 1


@settings(max_examples=200)
@given(conductor_and_elements(count=2))
def test_conjugation(data):
    _, x, y = data
    assert x.conjugate().conjugate() == x
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert abs(x.conjugate().embed() - x.embed().conjugate()) <= 1e-12


@settings(max_examples=300)
@given(conductor_and_elements(count=2))
def test_embed_is_homomorphism(data):
    _, x, y = data
    assert abs((x * y).embed() - x.embed() * y.embed()) <= 1e-12
    assert abs((x + y).embed() - (x.embed() + y.embed())) <= 1e-12


@given(st.integers(min_value=1, max_value=30), st.integers(min_value=-40, max_value=40))
def test_zeta_power_embeds(n, e):
    assert abs(Cyclotomic.zeta_power(n, e).embed() - cmath.exp(2j * cmath.pi * e / n)) <= 1e-12


@given(cyclotomics(8))
def test_hash_consistent_with_eq(x):
    y = Cyclotomic(8, x.coeffs)
    assert x == y and hash(x) == hash(y)
