"""Rings, gradings, and matrix term orders."""

import math
import random

import numpy as np
import pytest

from reespow import Ring
from reespow.errors import DegreeGuardError
from reespow.ring import elim_order, is_prime


def test_is_prime_spot_checks():
    primes = [2, 3, 5, 7, 31, 32003, 101, 2**31 - 1]
    composites = [0, 1, 4, 9, 15, 32001, 32005, 1000003 * 3]
    assert all(is_prime(p) for p in primes)
    assert not any(is_prime(c) for c in composites)


def test_ring_validation():
    with pytest.raises(ValueError):
        Ring(("x", "x"))
    with pytest.raises(ValueError):
        Ring(("x", "2y"))
    with pytest.raises(ValueError):
        Ring(("x",), char=32001)
    with pytest.raises(ValueError):
        Ring(("x",), weights=(0,))
    with pytest.raises(ValueError):
        Ring(("x", "y"), weights=(1,))
    with pytest.raises(ValueError):
        Ring(("x",), order="mystery")


def test_ring_equality_and_repr():
    a = Ring(("x", "y"))
    b = Ring(("x", "y"))
    c = Ring(("x", "y"), char=0)
    assert a == b and hash(a) == hash(b)
    assert a != c
    assert "GF(32003)" in repr(a)
    assert "QQ" in repr(c)


def _random_exponents(rng, nvars, max_exp=5):
    return tuple(rng.randint(0, max_exp) for _ in range(nvars))


@pytest.mark.parametrize(
    "order_kwargs",
    [
        {"order": "grevlex"},
        {"order": "lex"},
        {"order": "elim", "elim_block": 1},
    ],
    ids=["grevlex", "lex", "elim"],
)
def test_order_axioms(order_kwargs):
    """Total order compatible with multiplication, with 1 at the bottom."""
    weights = (1, 2, 1)
    ring = Ring(("a", "b", "c"), weights=weights, **order_kwargs)
    rng = random.Random(7)
    zero = (0, 0, 0)
    for _ in range(300):
        e1 = _random_exponents(rng, 3)
        e2 = _random_exponents(rng, 3)
        e3 = _random_exponents(rng, 3)
        c12 = ring.compare_monomials(e1, e2)
        # antisymmetry and totality (matrix orders never tie on distinct inputs)
        assert c12 == -ring.compare_monomials(e2, e1)
        assert (c12 == 0) == (e1 == e2)
        # invariance under multiplication by a common monomial
        shifted1 = tuple(a + b for a, b in zip(e1, e3))
        shifted2 = tuple(a + b for a, b in zip(e2, e3))
        assert ring.compare_monomials(shifted1, shifted2) == c12
        # global order: every monomial beats 1
        if e1 != zero:
            assert ring.compare_monomials(e1, zero) == 1
        # transitivity on a sorted triple
        trio = sorted([e1, e2, e3], key=lambda e: [int(x) for x in ring.order.matrix @ np.array(e)])
        assert ring.compare_monomials(trio[2], trio[0]) >= 0


def test_grevlex_tiebreak():
    ring = Ring(("x", "y"))
    # same degree: grevlex prefers the smaller last exponent
    assert ring.compare_monomials((2, 0), (1, 1)) == 1
    assert ring.compare_monomials((1, 1), (0, 2)) == 1


def test_elim_order_blocks():
    ring = Ring(("t", "x", "y"), order="elim", elim_block=1)
    # any t beats any monomial in x, y alone
    assert ring.compare_monomials((1, 0, 0), (0, 5, 5)) == 1
    assert ring.compare_monomials((0, 1, 0), (0, 0, 1)) == 1


def test_elim_order_block_range():
    with pytest.raises(ValueError):
        elim_order((1, 1), 3)


def test_monomials_of_degree_counts():
    ring = Ring(("x", "y", "z"))
    for d in range(7):
        assert len(ring.monomials_of_degree(d)) == math.comb(d + 2, 2)
    assert ring.monomials_of_degree(-1) == []
    assert ring.monomials_of_degree(0) == [(0, 0, 0)]


def test_monomials_of_degree_weighted():
    ring = Ring(("x", "y"), weights=(1, 2))
    # degree 4: x^4, x^2 y, y^2
    monos = set(ring.monomials_of_degree(4))
    assert monos == {(4, 0), (2, 1), (0, 2)}


def test_monomials_of_degree_descending():
    ring = Ring(("x", "y", "z"))
    monos = ring.monomials_of_degree(4)
    for a, b in zip(monos, monos[1:]):
        assert ring.compare_monomials(a, b) == 1


def test_degree_guard():
    ring = Ring(("x",), max_degree=5)
    with pytest.raises(DegreeGuardError):
        ring.guard_exponents(np.array([[6]], dtype=np.int64))
    ring.guard_exponents(np.array([[5]], dtype=np.int64))


def test_coefficients_prime_field():
    ring = Ring(("x",), char=7)
    assert ring.coeff_from_int(9) == 2
    assert ring.coeff_from_int(-1) == 6
    assert (3 * ring.coeff_inverse(3)) % 7 == 1


def test_coefficients_rationals():
    from fractions import Fraction

    ring = Ring(("x",), char=0)
    assert ring.coeff_from_int(9) == Fraction(9)
    assert ring.coeff_inverse(Fraction(3, 2)) == Fraction(2, 3)


def test_extended_and_restricted():
    ring = Ring(("x", "y"), weights=(1, 2))
    big = ring.extended(("u",), (3,))
    assert big.names == ("x", "y", "u")
    assert big.weights == (1, 2, 3)
    back = big.restricted(range(2))
    assert back.names == ("x", "y")
    assert back.weights == (1, 2)
    tail = big.restricted([2])
    assert tail.names == ("u",)


def test_var_index():
    ring = Ring(("x", "y"))
    assert ring.var_index("y") == 1
    with pytest.raises(KeyError):
        ring.var_index("z")
