"""Point counts on E_t : y^2 = 4x^3 - 27/(1-t) x - 27/(1-t), and on the
j = 0, 1728 twist families.

Point counting and the hypergeometric recovery of a(t, q) deliberately use
different machinery: counting never touches a character table.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .arithmetic_kernels import eisenstein_rep, gaussian_rep
from .characters import CharTable, char_eval
from .finite_field import FieldCtx, FieldElem, e_of_p, is_prime, make_field
from .hypergeometric import hyp2f1_level1, level1_all

RESIDUAL_TOL = 0.01


class ResidualError(ArithmeticError):
    """A hypergeometric value failed to round cleanly to an integer."""


@dataclass(frozen=True)
class CurveTrace:
    t: FieldElem
    q: int
    a: int
    npoints: int

    def __post_init__(self):
        if self.a != self.q + 1 - self.npoints:
            raise AssertionError("a != q + 1 - #E")
        if self.a * self.a > 4 * self.q:
            raise AssertionError(f"Hasse bound violated: a={self.a}, q={self.q}")


def _as_elem(ctx: FieldCtx, t) -> FieldElem:
    return t if isinstance(t, FieldElem) else ctx.embed(t)


def _check_t(ctx: FieldCtx, t: FieldElem):
    if t in (ctx.zero, ctx.one):
        raise ValueError("E_t degenerates at t = 0, 1")


def curve_coefficient(ctx: FieldCtx, t: FieldElem) -> FieldElem:
    """27/(1 - t), the common value of the x and constant coefficients."""
    return ctx.div(ctx(27), ctx.sub(ctx.one, t))


def a_trace(ctx: FieldCtx, t) -> CurveTrace:
    t = _as_elem(ctx, t)
    _check_t(ctx, t)
    c = curve_coefficient(ctx, t)
    if ctx.e == 1:
        p, c = ctx.p, c.a
        half = (p - 1) // 2
        total = 0
        for x in range(p):
            fx = (4 * x * x * x - c * x - c) % p
            if fx:
                total += 1 if pow(fx, half, p) == 1 else -1
    else:
        four = ctx(4)
        half = (ctx.q - 1) // 2
        total = 0
        for x in ctx.elements():
            fx = ctx.sub(ctx.mul(four, ctx.pow(x, 3)), ctx.mul(c, ctx.add(x, ctx.one)))
            if fx != ctx.zero:
                total += 1 if ctx.pow(fx, half) == ctx.one else -1
    npoints = 1 + ctx.q + total
    return CurveTrace(t, ctx.q, ctx.q + 1 - npoints, npoints)


@lru_cache(maxsize=None)
def traces_over_fp(p: int) -> tuple[int, ...]:
    """(a(2, p), ..., a(p-1, p)) by point counting."""
    ctx = make_field(p)
    return tuple(a_trace(ctx, t).a for t in range(2, p))


@lru_cache(maxsize=None)
def level1_table(p: int) -> CharTable:
    """Character table of F_q, q = p^e(p)."""
    return CharTable(make_field(p, e_of_p(p)))


def recover_integer(z: complex) -> tuple[int, float]:
    n = round(z.real)
    return n, max(abs(z.imag), abs(z.real - n))


def hyp_prefactor(tab: CharTable, t: FieldElem) -> complex:
    """-q T^((q-1)/2)(2) T^((q-1)/4)(1 - t)."""
    ctx, n = tab.ctx, tab.n
    return (-tab.q * char_eval(tab, n // 2, ctx(2))
            * char_eval(tab, n // 4, ctx.sub(ctx.one, t)))


def _checked(z: complex, what: str, tol: float) -> int:
    value, residual = recover_integer(z)
    if residual >= tol:
        raise ResidualError(f"{what}: {z} is {residual:.3g} away from an integer")
    return value


def a_from_hyp(tab: CharTable, t, tol: float = RESIDUAL_TOL) -> int:
    ctx = tab.ctx
    t = _as_elem(ctx, t)
    z = hyp_prefactor(tab, t) * hyp2f1_level1(tab, t)
    return _checked(z, f"a({t}, {tab.q})", tol)


def hyp_trace_values(tab: CharTable, ts) -> np.ndarray:
    """Unrounded prefactor * 2F1 at each t, using one DFT for all of F_q."""
    ctx = tab.ctx
    values = level1_all(tab)
    out = []
    for t in ts:
        t = _as_elem(ctx, t)
        _check_t(ctx, t)
        out.append(hyp_prefactor(tab, t) * values[ctx.index(t)])
    return np.array(out, dtype=complex)


def a_from_hyp_sweep(tab: CharTable, ts, tol: float = RESIDUAL_TOL) -> list[int]:
    ts = list(ts)
    values = hyp_trace_values(tab, ts)
    return [_checked(z, f"a({t}, {tab.q})", tol) for t, z in zip(ts, values)]


@lru_cache(maxsize=None)
def hyp_traces(p: int) -> tuple[int, ...]:
    """a(t, q) for t = 2..p-1 and q = p^e(p), through the hypergeometric route."""
    return tuple(a_from_hyp_sweep(level1_table(p), range(2, p)))


def a_squared(p: int, t: int) -> int:
    """a(t, p)^2 recovered from the hypergeometric function over F_q."""
    if not is_prime(p) or p <= 3:
        raise ValueError(f"p must be a prime > 3, got {p}")
    if not 2 <= t <= p - 1:
        raise ValueError(f"t must be in 2..p-1, got {t}")
    a = a_from_hyp(level1_table(p), t)
    return a * a if e_of_p(p) == 1 else a + 2 * p


def twist_count(p: int, j: int) -> int:
    if j == 1728:
        return gcd(4, p - 1)
    if j == 0:
        return gcd(6, p - 1)
    raise ValueError("j must be 0 or 1728")


def twist_traces(p: int, j: int) -> list[int]:
    """a(E) for one curve in each F_p-isomorphism class with the given j."""
    ctx = make_field(p)
    g = ctx.generator.a
    half = (p - 1) // 2
    out = []
    for i in range(twist_count(p, j)):
        coeff = pow(g, i, p)
        total = 0
        for x in range(p):
            fx = (x**3 + coeff * x) % p if j == 1728 else (x**3 + coeff) % p
            if fx:
                total += 1 if pow(fx, half, p) == 1 else -1
        out.append(-total)
    return out


def twist_sum(p: int, j: int, n: int) -> int:
    if n < 2 or n % 2:
        raise ValueError("n must be even and >= 2")
    return sum(a**n for a in twist_traces(p, j))


def twist_closed_form(p: int, j: int, n: int) -> int:
    """The closed-form value of sum a(E)^n over the j-twists."""
    if j == 1728:
        if p % 4 == 3:
            return 0
        a, b = gaussian_rep(p)
        return 2 ** (n + 1) * (a**n + b**n)
    if j == 0:
        if p % 3 == 2:
            return 0
        c, d = eisenstein_rep(p)
        return 2 * ((c + d) ** n + (2 * c - d) ** n + (c - 2 * d) ** n)
    raise ValueError("j must be 0 or 1728")
