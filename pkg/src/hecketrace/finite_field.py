"""Arithmetic in F_p and F_{p^2}.

F_{p^2} is realised as F_p[x]/(x^2 - r) with r the least quadratic
non-residue mod p, so every element is a + b*sqrt(r).  Elements of both
fields are stored as pairs (a, b); in the prime field b is always 0.
"""
from __future__ import annotations

from typing import Iterator, NamedTuple

MAX_FIELD_SIZE = 10**7


class FieldElem(NamedTuple):
    a: int
    b: int = 0

    def __repr__(self) -> str:
        if self.b == 0:
            return f"FieldElem({self.a})"
        return f"FieldElem({self.a}, {self.b})"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n > 0, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def primes_between(lo: int, hi: int) -> list[int]:
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]


def e_of_p(p: int) -> int:
    """Degree of the extension needed to reach a field of size 1 mod 12."""
    if p <= 3:
        raise ValueError(f"p must be a prime > 3, got {p}")
    return 1 if p % 12 == 1 else 2


def least_nonresidue(p: int) -> int:
    for r in range(2, p):
        if pow(r, (p - 1) // 2, p) == p - 1:
            return r
    raise ValueError(f"no quadratic non-residue mod {p}")


class FieldCtx:
    """The field F_q, q = p**e, e in {1, 2}.

    Instances are immutable once built.  The canonical enumeration order is
    ascending a for e=1 and lexicographic (a, b) for e=2; ``index`` and
    ``element`` convert between an element and its position in that order.
    """

    def __init__(self, p: int, e: int = 1):
        if e not in (1, 2):
            raise ValueError(f"extension degree must be 1 or 2, got {e}")
        if p <= 3:
            raise ValueError(f"p must be a prime > 3, got {p}")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        q = p**e
        if q > MAX_FIELD_SIZE:
            raise ValueError(f"field size {q} exceeds guard {MAX_FIELD_SIZE}")
        self.p = p
        self.e = e
        self.q = q
        self.r = least_nonresidue(p) if e == 2 else None
        self.zero = FieldElem(0, 0)
        self.one = FieldElem(1, 0)
        self.generator = self._find_generator()

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, e={self.e})"

    # conversions

    def __call__(self, a: int, b: int = 0) -> FieldElem:
        if self.e == 1 and b % self.p:
            raise ValueError("prime field elements have no sqrt(r) part")
        return FieldElem(a % self.p, b % self.p)

    def index(self, x: FieldElem) -> int:
        return x.a * self.p + x.b if self.e == 2 else x.a

    def element(self, i: int) -> FieldElem:
        if self.e == 2:
            return FieldElem(*divmod(i, self.p))
        return FieldElem(i, 0)

    def elements(self) -> Iterator[FieldElem]:
        for i in range(self.q):
            yield self.element(i)

    def embed(self, t: int) -> FieldElem:
        """The image of the integer t under Z -> F_p -> F_q."""
        return FieldElem(t % self.p, 0)

    # arithmetic

    def add(self, x: FieldElem, y: FieldElem) -> FieldElem:
        p = self.p
        return FieldElem((x.a + y.a) % p, (x.b + y.b) % p)

    def sub(self, x: FieldElem, y: FieldElem) -> FieldElem:
        p = self.p
        return FieldElem((x.a - y.a) % p, (x.b - y.b) % p)

    def neg(self, x: FieldElem) -> FieldElem:
        p = self.p
        return FieldElem(-x.a % p, -x.b % p)

    def mul(self, x: FieldElem, y: FieldElem) -> FieldElem:
        p = self.p
        if self.e == 1:
            return FieldElem(x.a * y.a % p, 0)
        return FieldElem((x.a * y.a + self.r * x.b * y.b) % p,
                         (x.a * y.b + x.b * y.a) % p)

    def norm(self, x: FieldElem) -> int:
        """Norm down to F_p (the identity when e=1)."""
        if self.e == 1:
            return x.a
        return (x.a * x.a - self.r * x.b * x.b) % self.p

    def inv(self, x: FieldElem) -> FieldElem:
        if x == self.zero:
            raise ZeroDivisionError("inverse of zero in a finite field")
        p = self.p
        if self.e == 1:
            return FieldElem(pow(x.a, -1, p), 0)
        n_inv = pow(self.norm(x), -1, p)
        return FieldElem(x.a * n_inv % p, -x.b * n_inv % p)

    def div(self, x: FieldElem, y: FieldElem) -> FieldElem:
        return self.mul(x, self.inv(y))

    def pow(self, x: FieldElem, n: int) -> FieldElem:
        if n < 0:
            x, n = self.inv(x), -n
        if self.e == 1:
            return FieldElem(pow(x.a, n, self.p), 0)
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            n >>= 1
        return result

    def is_square(self, x: FieldElem) -> bool:
        return x == self.zero or self.pow(x, (self.q - 1) // 2) == self.one

    # generator

    def order_is_maximal(self, x: FieldElem) -> bool:
        if x == self.zero:
            return False
        n = self.q - 1
        return all(self.pow(x, n // ell) != self.one for ell in prime_factors(n))

    def _find_generator(self) -> FieldElem:
        for i in range(1, self.q):
            x = self.element(i)
            if self.order_is_maximal(x):
                return x
        raise AssertionError("F_q^x is cyclic; a generator must exist")


def make_field(p: int, e: int = 1) -> FieldCtx:
    return FieldCtx(p, e)


def find_generator(ctx: FieldCtx) -> FieldElem:
    """First element in canonical order whose multiplicative order is q - 1."""
    return ctx.generator
