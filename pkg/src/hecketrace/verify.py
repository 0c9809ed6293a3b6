"""The invariant battery behind ``hecketrace verify``.

Each check takes the run bounds and returns a CheckResult; the first
counterexample found is kept in ``detail``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

import mpmath

from . import arithmetic_kernels as ak
from .characters import CharTable, char_eval, greene_binom
from .class_numbers import beta, class_number, hijikata_inner_sum, s_range
from .curve_family import (a_from_hyp, a_trace, hyp_trace_values, level1_table,
                           recover_integer, twist_closed_form,
                           twist_count, twist_sum)
from .finite_field import make_field, primes_between
from .hypergeometric import HypSpec, hyp_eval, level1_characters, transform_1_minus_x
from .mf_oracle import cusp_dimension, delta_qexp
from .trace_engine import full_report

PMAX_LIMIT = 200
KMAX_LIMIT = 26
TOL = 1e-9


@dataclass
class CheckResult:
    family: str
    passed: bool
    checked: int
    detail: str = ""


class _Check:
    def __init__(self, family: str):
        self.family = family
        self.checked = 0
        self.failure = ""

    def expect(self, ok: bool, what) -> bool:
        self.checked += 1
        if not ok and not self.failure:
            self.failure = what() if callable(what) else str(what)
        return ok

    def result(self) -> CheckResult:
        return CheckResult(self.family, not self.failure, self.checked, self.failure)


def _primes(pmax: int, cap: int | None = None) -> list[int]:
    return primes_between(5, pmax if cap is None else min(pmax, cap))


def check_fields(pmax, kmax, tol):
    c = _Check("field_generators")
    for p in _primes(pmax, 100):
        for e in (1, 2):
            ctx = make_field(p, e)
            g, x, seen = ctx.generator, ctx.one, set()
            for _ in range(ctx.q - 1):
                seen.add(x)
                x = ctx.mul(x, g)
            c.expect(len(seen) == ctx.q - 1, f"generator of F_{ctx.q} has small order")
            for y in ctx.elements():
                if y != ctx.zero:
                    c.expect(ctx.pow(y, ctx.q - 1) == ctx.one and ctx.mul(y, ctx.inv(y)) == ctx.one,
                             f"{y} in F_{ctx.q}")
    return c.result()


def check_characters(pmax, kmax, tol):
    c = _Check("character_orthogonality")
    for p, e in ((5, 1), (7, 1), (13, 1), (5, 2), (7, 2)):
        tab = CharTable(make_field(p, e))
        for j in range(tab.n):
            total = tab.values(j).sum()
            want = tab.n if j == 0 else 0
            c.expect(abs(total - want) < tol, f"sum of T^{j} over F_{tab.q} = {total}")
        for x in list(tab.ctx.elements())[1:8]:
            for i, j in ((1, 2), (3, tab.n - 1), (5, 7)):
                lhs = char_eval(tab, i + j, x)
                c.expect(abs(lhs - char_eval(tab, i, x) * char_eval(tab, j, x)) < 1e-12,
                         f"multiplicativity at {x}")
    return c.result()


def _direct_binom(tab, A, B):
    ctx = tab.ctx
    s = sum(char_eval(tab, A, x) * char_eval(tab, -B, ctx.sub(ctx.one, x)) for x in ctx.elements())
    return char_eval(tab, B, ctx(-1)) / tab.q * s


def check_binomials(pmax, kmax, tol):
    c = _Check("binomial_forms")
    for p, e in ((13, 1), (5, 2)):
        tab = CharTable(make_field(p, e))
        for A, B in product(range(0, tab.n, 3), range(0, tab.n, 2)):
            v = greene_binom(tab, A, B)
            c.expect(abs(v - _direct_binom(tab, A, B)) < tol, f"binom(T^{A}, T^{B}) over F_{tab.q}")
            c.expect(abs(v) <= 1 + tol, f"|binom(T^{A}, T^{B})| > 1")
    return c.result()


def _brute_2f1(tab, A, B, C, x):
    total = 0j
    for chi in range(tab.n):
        total += (_direct_binom(tab, A + chi, chi) * _direct_binom(tab, B + chi, C + chi)
                  * char_eval(tab, chi, x))
    return tab.q / tab.n * total


def check_hyp_bruteforce(pmax, kmax, tol):
    c = _Check("hypergeometric_definition")
    for p, e in ((13, 1), (5, 2)):
        tab = CharTable(make_field(p, e))
        n = tab.n
        for (A, B, C), xi in zip(((1, 5, 0), (n // 12, 5 * n // 12, 0), (2, 3, 7), (0, 0, 0)), (2, 3, 5, 7)):
            x = tab.ctx.element(xi)
            v = hyp_eval(tab, HypSpec((A, B), (C,), x))
            c.expect(abs(v - _brute_2f1(tab, A, B, C, x)) < tol, f"2F1({A},{B};{C}|{x}) over F_{tab.q}")
    return c.result()


def check_transformation(pmax, kmax, tol):
    c = _Check("transformation_law")
    for p, e in ((13, 1), (5, 2), (37, 1), (7, 2)):
        tab = CharTable(make_field(p, e))
        (A, B), (C,) = level1_characters(tab)
        triples = [(A, B, C), (1, 2, 3), (tab.n // 2, 1, 0)]
        for x in tab.ctx.elements():
            if x in (tab.ctx.zero, tab.ctx.one):
                continue
            for A_, B_, C_ in triples:
                lhs, rhs = transform_1_minus_x(tab, A_, B_, C_, x)
                c.expect(abs(lhs - rhs) < tol, f"({A_},{B_},{C_}) at x={x} over F_{tab.q}")
    return c.result()


def check_frobenius(pmax, kmax, tol):
    c = _Check("frobenius_bridge")
    for p in _primes(pmax, 37):
        f1, f2 = make_field(p), make_field(p, 2)
        for t in range(2, p):
            a1, a2 = a_trace(f1, t).a, a_trace(f2, t).a
            c.expect(a1 * a1 == a2 + 2 * p, f"a({t},{p})^2 = {a1 * a1} but a({t},{p}^2) + 2p = {a2 + 2 * p}")
    return c.result()


def check_hyp_pointcounts(pmax, kmax, tol):
    c = _Check("hypergeometric_point_counts")
    for p in _primes(pmax, 13):
        ctx = make_field(p, 2)
        tab = CharTable(ctx)
        other = CharTable(ctx, ctx.pow(ctx.generator, _coprime_exponent(tab.n)))
        for t in range(2, p):
            want = a_trace(ctx, t).a
            c.expect(a_from_hyp(tab, t) == want, f"a({t},{p}^2): hyp {a_from_hyp(tab, t)} vs count {want}")
            c.expect(a_from_hyp(other, t) == want, f"a({t},{p}^2) depends on the generator")
    return c.result()


def _coprime_exponent(n: int) -> int:
    return next(j for j in range(5, n) if gcd(j, n) == 1)


def check_twists(pmax, kmax, tol):
    c = _Check("twist_sums")
    expected_classes = {(1728, 1): 4, (1728, 3): 2, (0, 1): 6, (0, 2): 2}
    for p in _primes(pmax, 61):
        for j, mod in ((1728, 4), (0, 3)):
            c.expect(twist_count(p, j) == expected_classes[(j, p % mod)], f"class count j={j}, p={p}")
            for n in (2, 4, 6):
                got, want = twist_sum(p, j, n), twist_closed_form(p, j, n)
                c.expect(got == want, f"j={j}, p={p}, n={n}: {got} != {want}")
    return c.result()


def check_kernels(pmax, kmax, tol):
    c = _Check("kernel_identities")
    for k in range(2, kmax + 1, 2):
        m = k // 2 - 1
        for p in _primes(pmax, 97):
            for s in range(-20, 21):
                g, h = ak.g_h_bridge(k, s, p)
                c.expect(g == h, f"G_{k}({s},{p}) = {g} but H form = {h}")
                c.expect(g == ak.G_poly(k, -s, p), f"G_{k} not even in s")
                if m >= 1:
                    c.expect(ak.inverse_pair_expand(m, p, s) == s ** (2 * m), f"inverse pair m={m}, p={p}, s={s}")
            if k <= 16 and p <= 50:
                for s in range(0, 2 * int(p**0.5) + 1):
                    if s * s >= 4 * p:
                        continue
                    with mpmath.workdps(40):
                        disc = mpmath.sqrt(mpmath.mpc(s * s - 4 * p))
                        x, y = (s + disc) / 2, (s - disc) / 2
                        fk = (x ** (k - 1) - y ** (k - 1)) / (x - y)
                        err = abs(ak.G_poly(k, s, p) - fk)
                    c.expect(err < 1e-6, f"F_{k} vs G_{k} at s={s}, p={p}")
    return c.result()


def check_cm_data(pmax, kmax, tol):
    c = _Check("cm_integrality")
    for p in _primes(pmax):
        for k in range(2, kmax + 1, 2):
            if p % 4 == 1:
                vals = {ak.mu_from_rep(k, p, r) for r in ak.gaussian_reps(p)}
                c.expect(len(vals) == 1, f"mu_{k}({p}) depends on the representative")
            if p % 3 == 1:
                vals = {ak.nu_from_rep(k, p, r) for r in ak.eisenstein_reps(p)}
                c.expect(len(vals) == 1, f"nu_{k}({p}) depends on the representative")
    return c.result()


def check_class_numbers(pmax, kmax, tol):
    c = _Check("class_numbers")
    for d in (-3, -4, -7, -8, -11, -19, -43, -67, -163):
        c.expect(class_number(d).h == 1, f"h({d}) != 1")
    for p in _primes(pmax):
        lhs = p - beta(p) / 2
        rhs = sum((hijikata_inner_sum(s, p) for s in s_range(p)), Fraction(0))
        c.expect(lhs == rhs, f"k=2 identity at p={p}: {lhs} != {rhs}")
    return c.result()


def check_oracle(pmax, kmax, tol):
    c = _Check("oracle_spot_checks")
    tau = delta_qexp(13)
    c.expect(tau[6] == tau[2] * tau[3], "tau(6) != tau(2) tau(3)")
    c.expect(tau[4] == tau[2] ** 2 - 2**11, "tau(4) != tau(2)^2 - 2^11")
    for p, want in ((5, 4830), (7, -16744), (11, 534612), (13, -577738)):
        c.expect(tau[p] == want, f"tau({p}) = {tau[p]}")
    return c.result()


def check_hand_case(pmax, kmax, tol):
    c = _Check("hand_check_p5")
    if pmax < 5:
        return c.result()
    ctx = make_field(5)
    c.expect([a_trace(ctx, t).a for t in (2, 3, 4)] == [1, -2, -3], "a(t,5)")
    c.expect(ak.mu_k(4, 5) == 5 and ak.lambda_term(4, 5) == 0, "mu_4(5), lambda(4,5)")
    r = full_report(4, 5)
    c.expect(r.agree and r.trace == 0, f"Tr_4(5): {r}")
    return c.result()


def check_traces(pmax, kmax, tol):
    c = _Check("cross_route_traces")
    for p in _primes(pmax):
        tab = level1_table(p)
        for z in hyp_trace_values(tab, range(2, p)):
            res = recover_integer(complex(z))[1]
            c.expect(res < 0.01, f"rounding residual {res:.3g} at p={p}")
        for k in range(4, kmax + 1, 2):
            r = full_report(k, p)
            c.expect(r.agree, f"k={k}, p={p}: routes {r.routes}, oracle {r.oracle} {r.error or ''}")
            if not r.agree:
                continue
            dim = cusp_dimension(k)
            if dim == 0:
                c.expect(r.trace == 0, f"Tr_{k}({p}) = {r.trace} on a zero space")
            c.expect(r.trace**2 <= 4 * dim * dim * p ** (k - 1), f"Deligne bound fails at k={k}, p={p}")
    return c.result()


CHECKS = (check_fields, check_characters, check_binomials, check_hyp_bruteforce,
          check_transformation, check_frobenius, check_hyp_pointcounts, check_twists,
          check_kernels, check_cm_data, check_class_numbers, check_oracle,
          check_hand_case, check_traces)


def run_battery(pmax: int, kmax: int, tol: float = TOL) -> list[CheckResult]:
    if pmax > PMAX_LIMIT or kmax > KMAX_LIMIT:
        raise ValueError(f"bounds exceed guard rails (pmax <= {PMAX_LIMIT}, kmax <= {KMAX_LIMIT})")
    if kmax < 4:
        raise ValueError("kmax must be at least 4")
    return [check(pmax, kmax, tol) for check in CHECKS]
