"""Arithmetic in GF(p^k) using a polynomial basis.

The modulus is the lexicographically least monic irreducible polynomial of
degree k, comparing coefficient vectors from the constant term upward.
Elements are enumerated by the integer ``c0 + c1*p + ... + c_{k-1}*p^(k-1)``,
so the prime subfield comes first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterator


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1 or not is_prime(p):
                raise FieldError(f"{q} is not a prime power")
            return p, k
    raise FieldError(f"{q} is not a prime power")


def _polymulmod(a: tuple, b: tuple, mod: tuple, p: int) -> tuple:
    """Product of two length-k coefficient vectors modulo the monic ``mod`` (length k+1)."""
    k = len(a)
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(2 * k - 2, k - 1, -1):
        c = prod[d]
        if c:
            for j in range(k + 1):
                prod[d - k + j] = (prod[d - k + j] - c * mod[j]) % p
    return tuple(prod[:k])


def _has_factor_of_degree(poly: tuple, d: int, p: int) -> bool:
    """Does the monic ``poly`` have a monic divisor of degree d? (desk-scale trial division)"""
    for low in product(range(p), repeat=d):
        div = low + (1,)
        rem = list(poly)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c:
                for j in range(d + 1):
                    rem[i - d + j] = (rem[i - d + j] - c * div[j]) % p
        if not any(rem[:d]):
            return True
    return False


def is_irreducible(poly: tuple, p: int) -> bool:
    k = len(poly) - 1
    return all(not _has_factor_of_degree(poly, d, p) for d in range(1, k // 2 + 1))


def least_irreducible(p: int, k: int) -> tuple:
    """Coefficients (low to high, monic) of the least irreducible of degree k."""
    if k == 1:
        return (0, 1)
    for low in product(range(p), repeat=k):
        # itertools.product varies the last slot fastest; flip so the constant
        # term is the most significant key, giving low-to-high lex order.
        poly = tuple(reversed(low)) + (1,)
        if poly[0] != 0 and is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


@dataclass(frozen=True)
class FiniteField:
    p: int
    k: int
    modulus: tuple = field(compare=False)

    @property
    def q(self) -> int:
        return self.p ** self.k

    def __str__(self) -> str:
        terms = [f"{c}*x^{i}" if i else str(c) for i, c in enumerate(self.modulus) if c]
        return f"GF({self.p}^{self.k}; modulus={' + '.join(terms)})"

    # element construction -------------------------------------------------
    def element(self, coeffs) -> "FFElem":
        if isinstance(coeffs, int):
            return self.from_int(coeffs)
        c = tuple(int(x) % self.p for x in coeffs)
        if len(c) > self.k:
            raise FieldError("too many coefficients")
        return FFElem(self, c + (0,) * (self.k - len(c)))

    def from_int(self, n: int) -> "FFElem":
        """Element with index n in the canonical enumeration (0 <= n < q)."""
        if not 0 <= n < self.q:
            raise FieldError(f"index {n} outside GF({self.q})")
        c = []
        for _ in range(self.k):
            c.append(n % self.p)
            n //= self.p
        return FFElem(self, tuple(c))

    @property
    def zero(self) -> "FFElem":
        return FFElem(self, (0,) * self.k)

    @property
    def one(self) -> "FFElem":
        return FFElem(self, (1,) + (0,) * (self.k - 1))

    def elements(self) -> list["FFElem"]:
        return [self.from_int(i) for i in range(self.q)]

    def __iter__(self) -> Iterator["FFElem"]:
        return iter(self.elements())

    @cached_property
    def primitive_element(self) -> "FFElem":
        """Smallest element (in enumeration order) of multiplicative order q-1."""
        for a in self.elements()[1:]:
            if a.multiplicative_order() == self.q - 1:
                return a
        raise FieldError("no primitive element")  # unreachable for a field

    def additive_basis(self) -> list["FFElem"]:
        return [self.element((0,) * i + (1,)) for i in range(self.k)]

    # named operations mirroring the module API -------------------------------
    def frobenius_map(self, a: "FFElem", power: int) -> "FFElem":
        if not 0 <= power < self.k:
            raise FieldError(f"Frobenius power {power} outside 0..{self.k - 1}")
        return a ** (self.p ** power)

    def is_square(self, a: "FFElem") -> bool:
        """0 counts as a square; every element of an even-order field is a square."""
        if a.is_zero() or self.p == 2:
            return True
        return a ** ((self.q - 1) // 2) == self.one


class FFElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, F: FiniteField, coeffs: tuple):
        self.field = F
        self.coeffs = coeffs

    def _check(self, other: "FFElem") -> "FFElem":
        if isinstance(other, int):
            return self.field.element((other,))
        if other.field != self.field:
            raise FieldError("elements of different fields")
        return other

    def __add__(self, other) -> "FFElem":
        other = self._check(other)
        p = self.field.p
        return FFElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "FFElem":
        p = self.field.p
        return FFElem(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other) -> "FFElem":
        return self + (-self._check(other))

    def __rsub__(self, other) -> "FFElem":
        return self._check(other) - self

    def __mul__(self, other) -> "FFElem":
        other = self._check(other)
        F = self.field
        return FFElem(F, _polymulmod(self.coeffs, other.coeffs, F.modulus, F.p))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FFElem":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FFElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self ** (self.field.q - 2)

    def __truediv__(self, other) -> "FFElem":
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero in a finite field")
        return self * other.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise FieldError("zero has no multiplicative order")
        n, x = 1, self
        while x != self.field.one:
            x = x * self
            n += 1
        return n

    def __int__(self) -> int:
        return sum(c * self.field.p ** i for i, c in enumerate(self.coeffs))

    def __index__(self) -> int:
        return int(self)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.field.element((other,))
        return isinstance(other, FFElem) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.k, self.coeffs))

    def __repr__(self) -> str:
        return "[" + ",".join(map(str, self.coeffs)) + "]"


def make_field(p: int, k: int = 1) -> FiniteField:
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be positive")
    return FiniteField(p, k, least_irreducible(p, k))


def field_of_order(q: int) -> FiniteField:
    p, k = prime_power(q)
    return make_field(p, k)
