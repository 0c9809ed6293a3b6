"""Four routes to Tr_k(SL2(Z), p) and a report comparing them.

pointcount      -1 - lambda(k,p) - sum_t G_k(a(t,p), p), a(t,p) by counting points
hijikata        the Eichler-Selberg trace formula with class numbers
hypergeometric  the pointcount formula with G_k rewritten through H_m and
                a(t,q) recovered from a finite field 2F1
recursive       s^(2m) = sum_i b_i G_(2i+2) peeled off against lower weights

Floating point enters only in recovering the integer a(t,q); everything
after that is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arithmetic_kernels import G_poly, H_poly, b_coeffs, lambda_term
from .class_numbers import beta, hijikata_inner_sum, s_range
from .curve_family import hyp_traces, traces_over_fp
from .finite_field import e_of_p, is_prime
from .mf_oracle import hecke_trace_oracle

ROUTES = ("pointcount", "hijikata", "hypergeometric", "recursive")


def check_args(k: int, p: int, min_weight: int = 4):
    if not is_prime(p) or p <= 3:
        raise ValueError(f"p must be a prime > 3, got {p}")
    if k % 2 or k < min_weight:
        raise ValueError(f"k must be even and >= {min_weight}, got {k}")


@lru_cache(maxsize=None)
def trace_pointcount(k: int, p: int) -> int:
    check_args(k, p)
    return -1 - lambda_term(k, p) - sum(G_poly(k, a, p) for a in traces_over_fp(p))


def trace_hijikata(k: int, p: int) -> int:
    check_args(k, p, min_weight=2)
    total = Fraction(-1) - Fraction(beta(p), 2) * (-p) ** (k // 2 - 1)
    for s in s_range(p):
        total -= G_poly(k, s, p) * hijikata_inner_sum(s, p)
    if k == 2:
        total += p + 1
    if total.denominator != 1:
        raise ArithmeticError(f"Hijikata formula gave non-integral {total} at k={k}, p={p}")
    return int(total)


def _squared_traces(p: int) -> list[int]:
    """a(t,p)^2 for t = 2..p-1, from the hypergeometric values over F_q."""
    if e_of_p(p) == 1:
        return [a * a for a in hyp_traces(p)]
    return [a + 2 * p for a in hyp_traces(p)]


def trace_hypergeometric(k: int, p: int) -> int:
    check_args(k, p)
    m = k // 2 - 1
    total = Fraction(-1 - lambda_term(k, p))
    for a_sq in _squared_traces(p):
        total -= (-p) ** m * H_poly(m, Fraction(-a_sq, p))
    if total.denominator != 1:
        raise ArithmeticError(f"hypergeometric route gave non-integral {total}")
    return int(total)


def trace_recursive(k: int, p: int, strict: bool = False) -> int:
    """Recursion in the weight.  Lower weights come from the pointcount route
    unless ``strict``, in which case this function calls itself."""
    check_args(k, p)
    m = k // 2 - 1
    b = b_coeffs(m, p)
    total = -1 - lambda_term(k, p) + b[0] * (p - 2)
    for i in range(1, m):
        w = 2 * i + 2
        lower = trace_recursive(w, p, strict=True) if strict else trace_pointcount(w, p)
        total -= b[i] * (lower + 1 + lambda_term(w, p))
    e = e_of_p(p)
    # base is a(t,p) when e = 1 and a(t,p)^2 = a(t,p^2) + 2p when e = 2
    bases = [a + 2 * p * (e - 1) for a in hyp_traces(p)]
    total -= sum(x ** (2 * m // e) for x in bases)
    return total


ROUTE_FUNCS = {
    "pointcount": trace_pointcount,
    "hijikata": trace_hijikata,
    "hypergeometric": trace_hypergeometric,
    "recursive": trace_recursive,
}


@dataclass
class TraceReport:
    k: int
    p: int
    routes: dict[str, int] = field(default_factory=dict)
    oracle: int | None = None
    failed: str | None = None
    error: str | None = None

    @property
    def values(self) -> list[int]:
        vals = list(self.routes.values())
        if self.oracle is not None:
            vals.append(self.oracle)
        return vals

    @property
    def agree(self) -> bool:
        return self.failed is None and len(set(self.values)) == 1

    @property
    def trace(self) -> int | None:
        return self.values[0] if self.agree else None


def full_report(k: int, p: int, with_oracle: bool = True,
                routes=ROUTES) -> TraceReport:
    check_args(k, p)
    report = TraceReport(k, p)
    for name in routes:
        try:
            report.routes[name] = ROUTE_FUNCS[name](k, p)
        except ArithmeticError as exc:
            report.failed, report.error = name, str(exc)
            return report
    if with_oracle:
        try:
            report.oracle = hecke_trace_oracle(k, p)
        except ArithmeticError as exc:
            report.failed, report.error = "oracle", str(exc)
    return report
