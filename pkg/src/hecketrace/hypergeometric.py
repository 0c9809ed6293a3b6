"""Greene's hypergeometric functions over F_q.

    n+1Fn(A_0..A_n; B_1..B_n | x) = q/(q-1) * sum_chi (A_0 chi choose chi)
                                     * prod_i (A_i chi choose B_i chi) * chi(x)

Characters are integer indices into a CharTable.  Evaluation sums over all
q - 1 characters at once: each binomial factor is a row produced by
``binom_row`` and the final sum against chi(x) is a DFT, so one call to
``hyp_all`` gives the function at every x in F_q.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .characters import CharTable, binom_row
from .finite_field import FieldElem


@dataclass(frozen=True)
class HypSpec:
    top: tuple[int, ...]
    bottom: tuple[int, ...]
    x: FieldElem

    def __post_init__(self):
        if len(self.bottom) < 1 or len(self.top) != len(self.bottom) + 1:
            raise ValueError("need n >= 1 bottom characters and n + 1 top characters")


def _coefficients(tab: CharTable, top, bottom) -> np.ndarray:
    coeffs = binom_row(tab, top[0], 0)
    for a, b in zip(top[1:], bottom):
        coeffs = coeffs * binom_row(tab, a, b)
    return coeffs * (tab.q / tab.n)


def hyp_eval(tab: CharTable, spec: HypSpec) -> complex:
    k = int(tab.dlog[tab.ctx.index(spec.x)])
    if k < 0:
        return 0j
    coeffs = _coefficients(tab, spec.top, spec.bottom)
    return complex(np.dot(coeffs, tab.zeta[(np.arange(tab.n) * k) % tab.n]))


def hyp_all(tab: CharTable, top, bottom) -> np.ndarray:
    """The hypergeometric function at every x, indexed canonically."""
    coeffs = _coefficients(tab, top, bottom)
    by_log = tab.n * np.fft.ifft(coeffs)
    out = np.zeros(tab.q, dtype=complex)
    out[1:] = by_log[tab.dlog[1:]]
    return out


def level1_characters(tab: CharTable) -> tuple[tuple[int, int], tuple[int]]:
    n = tab.n
    if tab.q % 12 != 1:
        raise ValueError(f"q = {tab.q} is not 1 mod 12")
    return (n // 12, 5 * n // 12), (0,)


def _check_not_0_1(tab: CharTable, x: FieldElem, name: str = "t"):
    if x in (tab.ctx.zero, tab.ctx.one):
        raise ValueError(f"{name} must lie outside {{0, 1}}")


def hyp2f1_level1(tab: CharTable, t: FieldElem) -> complex:
    """2F1(T^((q-1)/12), T^(5(q-1)/12); eps | t) over F_q."""
    top, bottom = level1_characters(tab)
    _check_not_0_1(tab, t)
    return hyp_eval(tab, HypSpec(top, bottom, t))


def level1_all(tab: CharTable) -> np.ndarray:
    top, bottom = level1_characters(tab)
    return hyp_all(tab, top, bottom)


def transform_1_minus_x(tab: CharTable, A: int, B: int, C: int,
                        x: FieldElem) -> tuple[complex, complex]:
    """Both sides of 2F1(A,B;C|x) = A(-1) 2F1(A,B;AB conj(C)|1-x)."""
    _check_not_0_1(tab, x, "x")
    ctx = tab.ctx
    lhs = hyp_eval(tab, HypSpec((A, B), (C,), x))
    sign = -1 if A % 2 else 1
    rhs = sign * hyp_eval(tab, HypSpec((A, B), ((A + B - C) % tab.n,), ctx.sub(ctx.one, x)))
    return lhs, rhs
