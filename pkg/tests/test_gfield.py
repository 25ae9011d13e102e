import itertools

import pytest

from sector_atlas.gfield import (FieldError, field_of_order, is_irreducible, is_prime, least_irreducible,
                                 make_field, prime_power)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


def test_prime_helpers():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_power(81) == (3, 4)
    with pytest.raises(FieldError):
        prime_power(12)
    with pytest.raises(FieldError):
        field_of_order(6)


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms_brute_force(q):
    F = field_of_order(q)
    E = F.elements()
    assert len(set(E)) == q
    zero, one = F.zero, F.one
    for a, b in itertools.product(E, repeat=2):
        assert a + b == b + a and a * b == b * a
        if not b.is_zero():
            assert (a / b) * b == a
    for a, b, c in itertools.islice(itertools.product(E, repeat=3), 0, None, max(1, q ** 3 // 400)):
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)
    for a in E:
        assert a + zero == a and a * one == a and a - a == zero
        if not a.is_zero():
            assert a * a.inverse() == one


@pytest.mark.parametrize("q", ORDERS)
def test_multiplicative_group_is_cyclic(q):
    F = field_of_order(q)
    z = F.primitive_element
    assert z.multiplicative_order() == q - 1
    assert {z ** k for k in range(q - 1)} == {a for a in F.elements() if not a.is_zero()}


@pytest.mark.parametrize("q", [9, 25, 27, 8])
def test_frobenius_is_automorphism(q):
    F = field_of_order(q)
    for a, b in itertools.product(F.elements(), repeat=2):
        assert F.frobenius_map(a * b, 1) == F.frobenius_map(a, 1) * F.frobenius_map(b, 1)
        assert F.frobenius_map(a + b, 1) == F.frobenius_map(a, 1) + F.frobenius_map(b, 1)
    for a in F.elements():
        b = a
        for _ in range(F.k):
            b = F.frobenius_map(b, 1)
        assert b == a and F.frobenius_map(a, 0) == a


@pytest.mark.parametrize("q", [3, 5, 7, 9, 25])
def test_squares(q):
    F = field_of_order(q)
    squares = {a * a for a in F.elements() if not a.is_zero()}
    assert len(squares) == (q - 1) // 2
    assert all(F.is_square(a) == (a in squares) for a in F.elements() if not a.is_zero())


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)])
def test_least_irreducible_has_no_factor(p, k):
    f = least_irreducible(p, k)
    assert len(f) == k + 1 and is_irreducible(f, p)
    # brute force: no monic factor of degree 1..k/2
    def divides(g, f):
        r = list(f)
        while len(r) >= len(g):
            c = r[-1] * pow(g[-1], -1, p) % p
            shift = len(r) - len(g)
            for i, gi in enumerate(g):
                r[shift + i] = (r[shift + i] - c * gi) % p
            r.pop()
        return not any(r)
    for d in range(1, k // 2 + 1):
        for coeffs in itertools.product(range(p), repeat=d):
            assert not divides(list(coeffs) + [1], list(f))


def test_int_roundtrip():
    F = make_field(3, 2)
    assert [int(F.from_int(n)) for n in range(9)] == list(range(9))
