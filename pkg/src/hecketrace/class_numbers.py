"""Class numbers of imaginary quadratic orders and the Hijikata inner sums."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import NamedTuple


@dataclass(frozen=True)
class ClassData:
    d: int
    h: int
    w: int

    @property
    def h_star(self) -> Fraction:
        return Fraction(self.h, self.w)


class SplitData(NamedTuple):
    s: int
    ell: int
    msf: int
    case: int


def reduced_forms(d: int) -> list[tuple[int, int, int]]:
    """Primitive reduced positive definite forms (a, b, c) of discriminant d."""
    if d >= 0 or d % 4 not in (0, 1):
        raise ValueError(f"{d} is not a negative discriminant")
    forms = []
    for a in range(1, isqrt(-d // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - d) % (4 * a):
                continue
            c = (b * b - d) // (4 * a)
            if c < a or (b < 0 and a == c):
                continue
            if gcd(gcd(a, b), c) == 1:
                forms.append((a, b, c))
    return forms


@lru_cache(maxsize=None)
def class_number(d: int) -> ClassData:
    h = len(reduced_forms(d))
    w = 3 if d == -3 else 2 if d == -4 else 1
    return ClassData(d, h, w)


def h_star(d: int) -> Fraction:
    return class_number(d).h_star


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n != 0 as f^2 * m with m square-free (sign carried by m)."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    f, m = 1, 1
    q = 2
    while q * q <= n:
        e = 0
        while n % q == 0:
            n //= q
            e += 1
        f *= q ** (e // 2)
        m *= q ** (e % 2)
        q += 1
    return f, sign * m * n


def split_discriminant(s: int, p: int) -> SplitData:
    """Classify s^2 - 4p as ell^2 m (m = 1 mod 4) or ell^2 4m (m = 2, 3 mod 4)."""
    D = s * s - 4 * p
    if not 0 < s or D >= 0:
        raise ValueError(f"need 0 < s < 2 sqrt(p), got s={s}, p={p}")
    f, m = squarefree_split(D)
    if m % 4 == 1:
        return SplitData(s, f, m, 1)
    # s^2 - 4p = 0 or 1 mod 4, so a square-free part of 2 or 3 mod 4 forces 4 | f^2
    if f % 2:
        raise AssertionError(f"unexpected factorisation of {D}")
    return SplitData(s, f // 2, m, 2)


def hijikata_inner_sum(s: int, p: int) -> Fraction:
    """sum over f | ell of h*((s^2 - 4p) / f^2)."""
    sd = split_discriminant(s, p)
    D = s * s - 4 * p
    total = Fraction(0)
    for f in range(1, sd.ell + 1):
        if sd.ell % f:
            continue
        d = D // (f * f)
        if d * f * f != D or d % 4 not in (0, 1):
            raise AssertionError(f"{D}/{f}^2 is not a discriminant")
        total += h_star(d)
    return total


def s_range(p: int) -> range:
    """Integers 0 < s < 2 sqrt(p)."""
    return range(1, isqrt(4 * p - 1) + 1)


def beta(p: int) -> Fraction:
    if p % 4 == 1:
        return h_star(-4 * p)
    return h_star(-4 * p) + h_star(-p)
