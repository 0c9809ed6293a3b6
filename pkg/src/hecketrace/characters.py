"""Multiplicative characters of F_q via a discrete-log table.

A character is named by an integer j mod n (n = q - 1): it is T^j, where
T(g^k) = exp(2*pi*i*k/n) for the table's generator g.  Every character,
the trivial one included, is extended by chi(0) = 0.  All exponent algebra
is exact integer arithmetic; only the final root-of-unity lookup is inexact.
"""
from __future__ import annotations

import numpy as np

from .finite_field import FieldCtx, FieldElem


class CharTable:
    """Discrete logarithms of F_q^x with respect to a fixed generator.

    ``dlog`` is a dense array indexed by canonical element index, with -1
    stored at the zero element.  ``zeta[k]`` is exp(2*pi*i*k/n).
    """

    def __init__(self, ctx: FieldCtx, generator: FieldElem | None = None):
        g = ctx.generator if generator is None else generator
        if not ctx.order_is_maximal(g):
            raise ValueError(f"{g!r} does not generate F_{ctx.q}^x")
        self.ctx = ctx
        self.generator = g
        self.q = ctx.q
        self.n = n = ctx.q - 1

        dlog = np.full(ctx.q, -1, dtype=np.int64)
        x = ctx.one
        for k in range(n):
            dlog[ctx.index(x)] = k
            x = ctx.mul(x, g)
        if x != ctx.one or (dlog[1:] < 0).any():
            raise AssertionError("generator powers do not exhaust F_q^x")
        self.dlog = dlog
        self.zeta = np.exp(2j * np.pi * np.arange(n) / n)

        # dlog(x) and dlog(1 - x) over x not in {0, 1}, for Jacobi sums
        idx = np.arange(ctx.q)
        p = ctx.p
        if ctx.e == 1:
            one_minus = (1 - idx) % p
        else:
            a, b = np.divmod(idx, p)
            one_minus = ((1 - a) % p) * p + (-b % p)
        mask = (idx != 0) & (idx != ctx.index(ctx.one))
        self._lx = dlog[idx[mask]]
        self._l1x = dlog[one_minus[mask]]

    def log(self, x: FieldElem) -> int:
        k = int(self.dlog[self.ctx.index(x)])
        if k < 0:
            raise ValueError("discrete log of zero")
        return k

    def values(self, j: int) -> np.ndarray:
        """chi_j(x) for every x, indexed canonically."""
        out = self.zeta[(j * self.dlog) % self.n]
        out[0] = 0
        return out


def char_eval(tab: CharTable, j: int, x: FieldElem) -> complex:
    k = int(tab.dlog[tab.ctx.index(x)])
    if k < 0:
        return 0j
    return complex(tab.zeta[(j * k) % tab.n])


def char_sign(tab: CharTable, j: int) -> int:
    """T^j(-1).  Since dlog(-1) = n/2, this is (-1)^j."""
    return -1 if j % 2 else 1


def jacobi_sum(tab: CharTable, A: int, B: int) -> complex:
    """J(A, B) = sum over x of A(x) B(1 - x)."""
    n = tab.n
    return complex(tab.zeta[(A * tab._lx + B * tab._l1x) % n].sum())


def greene_binom(tab: CharTable, A: int, B: int) -> complex:
    """Character binomial coefficient (A choose B) = B(-1)/q * J(A, conj B)."""
    return char_sign(tab, B) * jacobi_sum(tab, A, -B) / tab.q


def binom_row(tab: CharTable, a: int, b: int) -> np.ndarray:
    """Vector over c of (T^(a+c) choose T^(b+c)), for c = 0..n-1.

    Each entry is a sum over x of zeta^(a*u - b*v) * zeta^(c*(u - v)) with
    u = dlog x, v = dlog(1 - x); bucketing by u - v turns the whole row into
    one length-n DFT.
    """
    n = tab.n
    u, v = tab._lx, tab._l1x
    weights = tab.zeta[(a * u - b * v) % n]
    buckets = np.zeros(n, dtype=complex)
    np.add.at(buckets, (u - v) % n, weights)
    sums = n * np.fft.ifft(buckets)
    signs = np.where((b + np.arange(n)) % 2 == 1, -1.0, 1.0)
    return signs * sums / tab.q
