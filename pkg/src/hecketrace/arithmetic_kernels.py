"""Exact polynomial kernels and CM normalisation data.

G_k(s, p) is the polynomial with G_k(x + y, xy) = (x^(k-1) - y^(k-1))/(x - y).
H_m and the coefficients b_i form the inverse pair that rewrites s^(2m) in
terms of G_2, G_4, ..., G_(2m+2).  Nothing in this module uses floats.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt
from typing import NamedTuple


def binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def _check_weight(k: int, least: int = 2):
    if k % 2 or k < least:
        raise ValueError(f"weight must be even and >= {least}, got {k}")


@lru_cache(maxsize=None)
def _g_coeffs(k: int) -> tuple[int, ...]:
    return tuple((-1) ** j * binom(k - 2 - j, j) for j in range(k // 2))


def G_poly(k: int, s: int, p: int) -> int:
    _check_weight(k)
    total = 0
    for j, c in enumerate(_g_coeffs(k)):
        total += c * p**j * s ** (k - 2 * j - 2)
    return total


def H_poly(m: int, x) -> Fraction:
    if m < 0:
        raise ValueError("m must be non-negative")
    x = Fraction(x)
    return sum((binom(m + i, m - i) * x**i for i in range(m + 1)), Fraction(0))


def b_coeffs(m: int, p: int) -> tuple[int, ...]:
    if m < 1:
        raise ValueError("m must be >= 1")
    return tuple(p ** (m - i) * (binom(2 * m, m - i) - binom(2 * m, m - i - 1))
                 for i in range(m + 1))


def inverse_pair_expand(m: int, p: int, s: int) -> int:
    """sum_i b_i G_(2i+2)(s, p); equals s^(2m)."""
    return sum(b * G_poly(2 * i + 2, s, p) for i, b in enumerate(b_coeffs(m, p)))


def g_h_bridge(k: int, s: int, p: int) -> tuple[int, int]:
    _check_weight(k)
    m = k // 2 - 1
    rhs = (-p) ** m * H_poly(m, Fraction(-s * s, p))
    if rhs.denominator != 1:
        raise ArithmeticError(f"(-p)^m H_m(-s^2/p) not integral for k={k}, s={s}, p={p}")
    return G_poly(k, s, p), int(rhs)


class GaussianRep(NamedTuple):
    a: int
    b: int


class EisensteinRep(NamedTuple):
    c: int
    d: int


def gaussian_ok(a: int, b: int) -> bool:
    """a + bi = 1 mod (2 + 2i) in Z[i]."""
    x, y = a - 1, b
    # (x + yi)/(2 + 2i) = ((x + y) + (y - x)i)/4
    return (x + y) % 4 == 0 and (y - x) % 4 == 0


def eisenstein_ok(c: int, d: int) -> bool:
    """c + d*omega = 2 mod 3 in Z[omega]."""
    return c % 3 == 2 and d % 3 == 0


def gaussian_reps(p: int) -> list[GaussianRep]:
    if p % 4 != 1:
        raise ValueError(f"p = {p} is not 1 mod 4")
    r = isqrt(p)
    return [GaussianRep(a, b) for a in range(-r, r + 1) for b in range(-r, r + 1)
            if a * a + b * b == p and gaussian_ok(a, b)]


def eisenstein_reps(p: int) -> list[EisensteinRep]:
    if p % 3 != 1:
        raise ValueError(f"p = {p} is not 1 mod 3")
    r = 2 * isqrt(p) + 2
    return [EisensteinRep(c, d) for c in range(-r, r + 1) for d in range(-r, r + 1)
            if c * c - c * d + d * d == p and eisenstein_ok(c, d)]


def gaussian_rep(p: int) -> GaussianRep:
    """First normalised p = a^2 + b^2 in lexicographic (a, b) order."""
    reps = gaussian_reps(p)
    if not reps:
        raise AssertionError(f"no normalised Gaussian representation of {p}")
    return reps[0]


def eisenstein_rep(p: int) -> EisensteinRep:
    """First normalised p = c^2 - cd + d^2 in lexicographic (c, d) order."""
    reps = eisenstein_reps(p)
    if not reps:
        raise AssertionError(f"no normalised Eisenstein representation of {p}")
    return reps[0]


def _exact(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"{what} = {value} is not an integer")
    return int(value)


def mu_from_rep(k: int, p: int, rep: GaussianRep) -> int:
    a, b = rep
    return _exact(Fraction(G_poly(k, 2 * a, p) + G_poly(k, 2 * b, p), 2), f"mu_{k}({p})")


def nu_from_rep(k: int, p: int, rep: EisensteinRep) -> int:
    c, d = rep
    total = G_poly(k, c + d, p) + G_poly(k, 2 * c - d, p) + G_poly(k, c - 2 * d, p)
    return _exact(Fraction(total, 3), f"nu_{k}({p})")


def mu_k(k: int, p: int) -> int:
    _check_weight(k)
    return mu_from_rep(k, p, gaussian_rep(p))


def nu_k(k: int, p: int) -> int:
    _check_weight(k)
    return nu_from_rep(k, p, eisenstein_rep(p))


def lambda_term(k: int, p: int) -> int:
    """The elliptic-point correction lambda(k, p), by p mod 12."""
    _check_weight(k, 4)
    if p <= 3:
        raise ValueError(f"p must be a prime > 3, got {p}")
    tail = (-p) ** (k // 2 - 1)
    r = p % 12
    if r == 1:
        return mu_k(k, p) + nu_k(k, p)
    if r == 5:
        return mu_k(k, p) + tail
    if r == 7:
        return nu_k(k, p) + tail
    if r == 11:
        return 2 * tail
    raise ValueError(f"p = {p} is not prime to 6")
