from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gmalg.errors import InputError, NotEnumerable
from gmalg.rings import (
    Rationals,
    Zmod,
    parse_ring,
    parse_ring_flag,
    scalar_from_json,
    scalar_to_json,
)


def test_zmod_basic_arithmetic():
    R = Zmod(3)
    assert R.add(2, 2) == 1
    assert R.mul(2, 2) == 1
    assert R.sub(0, 1) == 2
    assert R.neg(1) == 2


def test_zmod_inverse():
    assert Zmod(4).inv_opt(2) is None
    assert Zmod(4).inv_opt(3) == 3
    assert Zmod(7).inv_opt(3) == 5


def test_zmod_scalars_deterministic():
    assert list(Zmod(5).scalars()) == [0, 1, 2, 3, 4]
    assert list(Zmod(2).scalars()) == [0, 1]


def test_zmod_field_detection():
    assert Zmod(3).is_field
    assert Zmod(7).is_field
    assert not Zmod(4).is_field
    assert not Zmod(6).is_field


def test_zmod_rejects_small_modulus():
    with pytest.raises(InputError):
        Zmod(1)


def test_two_torsion():
    assert Zmod(3).is_two_torsion_free()
    assert not Zmod(4).is_two_torsion_free()
    assert Rationals().is_two_torsion_free()


def test_rationals_arithmetic():
    Q = Rationals()
    assert Q.inv_opt(Fraction(3, 2)) == Fraction(2, 3)
    assert Q.inv_opt(Fraction(0)) is None
    with pytest.raises(NotEnumerable):
        Q.scalars()
    with pytest.raises(InputError):
        Q.coerce(0.5)


def test_parse_ring():
    assert parse_ring({"kind": "Zmod", "n": 3}) == Zmod(3)
    assert parse_ring({"kind": "Q"}) == Rationals()
    with pytest.raises(InputError):
        parse_ring({"kind": "Zp"})


def test_parse_ring_flag():
    assert parse_ring_flag("zmod:5") == Zmod(5)
    assert parse_ring_flag("q") == Rationals()
    with pytest.raises(InputError):
        parse_ring_flag("gf:9")


def test_scalar_json_round_trip():
    Q = Rationals()
    x = Fraction(-7, 3)
    assert scalar_from_json(Q, scalar_to_json(Q, x)) == x
    R = Zmod(5)
    assert scalar_from_json(R, scalar_to_json(R, 3)) == 3


@given(st.integers(2, 30), st.integers(), st.integers(), st.integers())
def test_zmod_ring_axioms(n, a, b, c):
    R = Zmod(n)
    x, y, z = R.coerce(a), R.coerce(b), R.coerce(c)
    assert R.add(x, y) == R.add(y, x)
    assert R.mul(x, y) == R.mul(y, x)
    assert R.mul(R.mul(x, y), z) == R.mul(x, R.mul(y, z))
    assert R.mul(x, R.add(y, z)) == R.add(R.mul(x, y), R.mul(x, z))
    assert R.add(x, R.neg(x)) == R.zero
    assert R.mul(x, R.one) == x


@given(st.integers(2, 30), st.integers())
def test_zmod_inverse_really_inverts(n, a):
    R = Zmod(n)
    x = R.coerce(a)
    inv = R.inv_opt(x)
    if inv is not None:
        assert R.mul(x, inv) == R.one


def test_odd_modulus_two_torsion_exhaustive():
    R = Zmod(9)
    for x in R.scalars():
        if R.add(x, x) == R.zero:
            assert x == R.zero
