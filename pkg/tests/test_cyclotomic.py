from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stringyk.cyclotomic import (Cyclo, cyclotomic_polynomial, euler_phi,
                                 parse_cyclo, root_of_unity)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_root_of_unity_examples():
    assert root_of_unity(0, 5) == 1
    assert root_of_unity(2, 4) == -1
    w1, w2 = root_of_unity(1, 3), root_of_unity(2, 3)
    assert w1 + w2 == -1  # minimal polynomial 1 + z + z^2 = 0


def test_field_op_examples():
    x = Cyclo.one() + root_of_unity(1, 3)
    assert x * x.inverse() == 1
    assert root_of_unity(1, 8).conjugate() == root_of_unity(7, 8)
    mixed = root_of_unity(1, 3) + root_of_unity(1, 4)
    assert mixed.n == 12


def test_try_rational():
    assert Cyclo.one().try_rational() == 1
    assert (root_of_unity(1, 3) + root_of_unity(2, 3)).try_rational() == -1
    assert root_of_unity(1, 5).try_rational() is None
    with pytest.raises(ValueError):
        root_of_unity(1, 5).rational_value()


def test_division_by_zero_is_distinct():
    with pytest.raises(ZeroDivisionError):
        Cyclo.zero().inverse()
    with pytest.raises(ZeroDivisionError):
        Cyclo.one() / Cyclo.zero()


def test_roots_of_unity_sum_to_zero():
    for n in (2, 3, 4, 5, 6, 8, 12, 24):
        total = Cyclo.zero()
        for k in range(n):
            total = total + root_of_unity(k, n)
        assert not total


def test_embed_and_reduce_roundtrip():
    for n, m in ((3, 12), (4, 12), (6, 24), (1, 7)):
        x = root_of_unity(1, n) + Fraction(1, 2)
        up = x.at_conductor(m * (n // n) if m % n == 0 else m)
        assert up == x
        assert up.reduced() == x


def test_reduced_minimizes_conductor():
    assert root_of_unity(2, 12).reduced().n == 3  # zeta_6 lives in Q(zeta_3)
    assert root_of_unity(3, 12).n == 4
    assert Cyclo(4, (Fraction(5), Fraction(0))).reduced().n == 1


def test_conjugate_is_involution_and_ring_map():
    x = root_of_unity(1, 8) + root_of_unity(3, 8) * Fraction(2, 3)
    y = root_of_unity(5, 8) - 1
    assert x.conjugate().conjugate() == x
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert (x + y).conjugate() == x.conjugate() + y.conjugate()


def test_galois_requires_coprime():
    with pytest.raises(ValueError):
        root_of_unity(1, 4).galois(2)


def test_literal_grammar():
    v = parse_cyclo("1/2*z(3)^1 - 1")
    assert v == root_of_unity(1, 3) * Fraction(1, 2) - 1
    assert parse_cyclo("2") == 2
    assert parse_cyclo("-3/4") == Fraction(-3, 4)
    assert parse_cyclo("-z(4)") == -root_of_unity(1, 4)
    assert parse_cyclo("z(6)^5 + z(6)") == \
        root_of_unity(5, 6) + root_of_unity(1, 6)
    with pytest.raises(ValueError):
        parse_cyclo("")
    with pytest.raises(ValueError):
        parse_cyclo("z(3) z(4)")


def test_literal_roundtrip():
    samples = [
        Cyclo.zero(), Cyclo.one(), Cyclo.from_rational(Fraction(-7, 3)),
        root_of_unity(1, 3), root_of_unity(5, 12) - Fraction(1, 2),
        root_of_unity(1, 8) * 3 + root_of_unity(2, 8) * Fraction(-1, 5),
    ]
    for x in samples:
        assert parse_cyclo(x.literal()) == x


small_cyclos = st.builds(
    lambda n, coeffs: Cyclo(n, [Fraction(c, 3) for c in coeffs[:euler_phi(n)]]),
    st.sampled_from([1, 2, 3, 4, 6, 8]),
    st.lists(st.integers(min_value=-6, max_value=6), min_size=8, max_size=8),
)


@settings(max_examples=60, deadline=None)
@given(small_cyclos, small_cyclos, small_cyclos)
def test_field_axioms(x, y, z):
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    if y:
        assert (x * y) / y == x


@settings(max_examples=40, deadline=None)
@given(small_cyclos)
def test_conductor_reduction_is_faithful(x):
    r = x.reduced()
    assert r == x
    assert x.n % r.n == 0
