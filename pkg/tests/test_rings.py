from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quotlab.errors import StructuralError, UnsupportedBaseError
from quotlab.rings import (
    ArtinianExtension,
    GaloisField,
    Integers,
    PrimeField,
    Rationals,
    ResidueRing,
    ring_from_spec,
)

MODULI = [2, 3, 4, 5, 8, 9, 25, 27]


@given(st.sampled_from(MODULI), st.integers(), st.integers(), st.integers())
def test_residue_ring_matches_integer_arithmetic(n, a, b, c):
    R = ResidueRing(n)
    x, y, z = R.from_int(a), R.from_int(b), R.from_int(c)
    assert R.add(x, y) == (a + b) % n
    assert R.mul(x, R.add(y, z)) == R.add(R.mul(x, y), R.mul(x, z))
    assert R.sub(x, x) == R.zero


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(min_value=1, max_value=10**6))
def test_prime_field_inverse(p, a):
    F = PrimeField(p)
    x = F.from_int(a)
    if x:
        assert F.mul(x, F.inv(x)) == F.one
    else:
        assert not F.is_unit(x)


def test_chain_ring_valuations():
    R = ResidueRing(27)
    assert R.nilpotency == 3
    assert [R.valuation(x) for x in (1, 3, 9, 18)] == [0, 1, 2, 2]
    assert R.residue_field() == PrimeField(3)
    assert not ResidueRing(4).is_field


def test_non_prime_power_modulus_is_not_a_chain_ring():
    with pytest.raises(UnsupportedBaseError):
        ResidueRing(6).require_chain()


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (3, 2), (5, 2)])
def test_galois_field_unit_group_is_cyclic_of_order_q_minus_one(p, e):
    F = GaloisField(p, e)
    elems = F.elements()
    assert len(elems) == p**e
    units = [x for x in elems if x != F.zero]
    for x in units:
        assert F.pow(x, p**e - 1) == F.one
        assert F.mul(x, F.inv(x)) == F.one


def test_galois_field_modulus_prints_descending():
    assert str(GaloisField(2, 3)) == "GF(2)[z]/(z^3 + z + 1)"


def test_artinian_extension_nilpotency():
    E = ArtinianExtension(PrimeField(3), 3)
    eps = E.gen()
    assert E.nilpotency == 3
    assert E.pow(eps, 2) != E.zero
    assert E.pow(eps, 3) == E.zero
    assert E.is_unit(E.add(E.one, eps))
    assert not E.is_unit(eps)
    assert E.valuation(E.pow(eps, 2)) == 2


def test_extensions_need_a_field_base():
    with pytest.raises(StructuralError):
        ArtinianExtension(ResidueRing(4), 2)


def test_rationals_and_integers():
    Q = Rationals()
    assert Q.inv(Fraction(2, 3)) == Fraction(3, 2)
    Z = Integers()
    assert Z.is_unit(-1) and not Z.is_unit(2)


@pytest.mark.parametrize(
    "R",
    [PrimeField(7), ResidueRing(9), GaloisField(2, 2), ArtinianExtension(PrimeField(5), 2), Rationals(), Integers()],
)
def test_describe_round_trips(R):
    assert ring_from_spec(R.describe()) == R
