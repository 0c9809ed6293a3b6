"""Independent oracle: q-expansions of level 1 forms and an explicit T_p matrix.

Shares nothing with the finite-field code.  Cusp forms of weight k are
spanned by Delta^j E4^a E6^b (12j + 4a + 6b = k, j >= 1); the span is put in
echelon form over Q and T_p acts on coefficients by
a_n(T_p f) = a_(np)(f) + p^(k-1) a_(n/p)(f).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class QSeries:
    """Truncated power series sum_{n <= N} c_n q^n with exact coefficients."""

    def __init__(self, coeffs, prec: int | None = None):
        coeffs = list(coeffs)
        if prec is None:
            prec = len(coeffs) - 1
        coeffs = coeffs[: prec + 1]
        coeffs += [0] * (prec + 1 - len(coeffs))
        self.coeffs = coeffs
        self.prec = prec

    def __repr__(self):
        head = " + ".join(f"{c}*q^{i}" for i, c in enumerate(self.coeffs[:4]) if c)
        return f"QSeries({head} + O(q^{self.prec + 1}))"

    def __getitem__(self, n: int):
        if n > self.prec:
            raise IndexError(f"coefficient {n} beyond precision {self.prec}")
        return self.coeffs[n]

    def __eq__(self, other):
        return isinstance(other, QSeries) and self.prec == other.prec and self.coeffs == other.coeffs

    def __add__(self, other: QSeries) -> QSeries:
        N = min(self.prec, other.prec)
        return QSeries([a + b for a, b in zip(self.coeffs[: N + 1], other.coeffs[: N + 1])], N)

    def __sub__(self, other: QSeries) -> QSeries:
        return self + other.scale(-1)

    def scale(self, c) -> QSeries:
        return QSeries([c * a for a in self.coeffs], self.prec)

    def __mul__(self, other: QSeries) -> QSeries:
        N = min(self.prec, other.prec)
        a, b = self.coeffs, other.coeffs
        out = [0] * (N + 1)
        for i in range(N + 1):
            ai = a[i]
            if ai:
                for j in range(N + 1 - i):
                    out[i + j] += ai * b[j]
        return QSeries(out, N)

    def __pow__(self, e: int) -> QSeries:
        result = QSeries([1], self.prec)
        for _ in range(e):
            result = result * self
        return result

    def truncate(self, N: int) -> QSeries:
        return QSeries(self.coeffs, min(N, self.prec))


def sigma(n: int, r: int) -> int:
    return sum(d**r for d in range(1, n + 1) if n % d == 0)


def eisenstein_qexp(k: int, N: int) -> QSeries:
    if N < 1:
        raise ValueError("precision must be >= 1")
    if k == 4:
        return QSeries([1] + [240 * sigma(n, 3) for n in range(1, N + 1)], N)
    if k == 6:
        return QSeries([1] + [-504 * sigma(n, 5) for n in range(1, N + 1)], N)
    raise ValueError(f"only E4 and E6 are provided, not weight {k}")


@lru_cache(maxsize=8)
def _delta_cached(N: int) -> QSeries:
    E4, E6 = eisenstein_qexp(4, N), eisenstein_qexp(6, N)
    num = E4**3 - E6**2
    if any(c % 1728 for c in num.coeffs):
        raise ArithmeticError("E4^3 - E6^2 is not divisible by 1728")
    return QSeries([c // 1728 for c in num.coeffs], N)


def delta_qexp(N: int) -> QSeries:
    if N < 1:
        raise ValueError("precision must be >= 1")
    return _delta_cached(N)


def cusp_dimension(k: int) -> int:
    if k % 2 or k < 0:
        return 0
    if k == 2:
        return 0
    d = k // 12
    return d - 1 if k % 12 == 2 else d


@dataclass(frozen=True)
class CuspBasis:
    k: int
    prec: int
    forms: tuple[QSeries, ...]

    @property
    def dim(self) -> int:
        return len(self.forms)


def _monomials(k: int):
    for j in range(1, k // 12 + 1):
        rest = k - 12 * j
        for a in range(rest // 4 + 1):
            if (rest - 4 * a) % 6 == 0:
                yield j, a, (rest - 4 * a) // 6


def _echelon(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Reduced row echelon form, zero rows dropped."""
    rows = [r[:] for r in rows]
    out = []
    col = 0
    width = len(rows[0]) if rows else 0
    while rows and col < width:
        pivot = next((r for r in rows if r[col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows.remove(pivot)
        lead = pivot[col]
        pivot = [x / lead for x in pivot]
        rows = [[x - r[col] * y for x, y in zip(r, pivot)] for r in rows]
        out = [[x - r[col] * y for x, y in zip(r, pivot)] for r in out]
        out.append(pivot)
        col += 1
    return out


@lru_cache(maxsize=None)
def cusp_basis(k: int, N: int) -> CuspBasis:
    if k % 2 or not 4 <= k <= 26:
        raise ValueError(f"weight must be even in [4, 26], got {k}")
    dim = cusp_dimension(k)
    if dim == 0:
        return CuspBasis(k, N, ())
    if N < dim:
        raise ValueError(f"precision {N} cannot separate a {dim}-dimensional space")
    D, E4, E6 = delta_qexp(N), eisenstein_qexp(4, N), eisenstein_qexp(6, N)
    spanning = [D**j * E4**a * E6**b for j, a, b in _monomials(k)]
    rows = _echelon([[Fraction(c) for c in f.coeffs] for f in spanning])
    if len(rows) != dim:
        raise ArithmeticError(f"weight {k}: rank {len(rows)} != dimension {dim}")
    forms = tuple(QSeries(r, N) for r in rows)
    for i, f in enumerate(forms):
        if [f[n] for n in range(dim + 1)] != [int(n == i + 1) for n in range(dim + 1)]:
            raise ArithmeticError(f"weight {k}: basis is not echelonised at q^1..q^{dim}")
    return CuspBasis(k, N, forms)


def oracle_precision(k: int, p: int) -> int:
    return cusp_dimension(k) * p + 8


def hecke_matrix(k: int, p: int, basis: CuspBasis | None = None) -> list[list[Fraction]]:
    """Matrix of T_p on S_k; column i holds T_p(f_i) in the echelon basis."""
    dim = cusp_dimension(k)
    if basis is None:
        basis = cusp_basis(k, oracle_precision(k, p))
    if basis.prec < dim * p:
        raise ValueError(f"precision {basis.prec} < {dim * p} needed for T_{p} on S_{k}")
    M = [[Fraction(0)] * dim for _ in range(dim)]
    for i, f in enumerate(basis.forms):
        for n in range(1, dim + 1):
            c = f[n * p]
            if n % p == 0:
                c += p ** (k - 1) * f[n // p]
            M[n - 1][i] = c
    return M


def hecke_trace_oracle(k: int, p: int) -> int:
    if cusp_dimension(k) == 0:
        if k % 2 or not 4 <= k <= 26:
            raise ValueError(f"weight must be even in [4, 26], got {k}")
        return 0
    M = hecke_matrix(k, p)
    tr = sum(M[i][i] for i in range(len(M)))
    if tr.denominator != 1:
        raise ArithmeticError(f"non-integral trace {tr}")
    return int(tr)
