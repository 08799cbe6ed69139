"""Closed-form face counts and exact truncated power series checks.

Series are exponential in ``x`` and ordinary in ``y``: the coefficient of
``x^n y^k`` stored here is ``count(n, k) / n!``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Optional


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n < 0 or k < 0:
        return 0
    if n == 0 or k == 0:
        return int(n == k)
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def braid_face_count(n: int, k: int) -> int:
    """k-dimensional faces of the braid arrangement: ordered set partitions into k blocks."""
    return factorial(k) * stirling2(n, k)


def _alternating(i: int, k: int, m: int) -> int:
    return sum((-1) ** j * comb(i - k, j) * comb(i * (m + 1) - j * m, i - 1) for j in range(i - k + 1))


def dash_tree_count(i: int, k: int, m: int) -> int:
    """Unlabelled (m+1)-ary dash trees with ``i`` nodes, ``k`` of them free."""
    if not 1 <= k <= i:
        return 0
    num = comb(i, k) * _alternating(i, k, m)
    q, r = divmod(num, i)
    if r:
        raise ArithmeticError(f"dash tree count ({i},{k},{m}) is not an integer")
    return q


def catalan_face_count(n: int, k: int, m: int) -> int:
    if n == 0:
        return int(k == 0)
    if not 1 <= k <= n:
        return 0
    return sum(
        stirling2(n, i) * factorial(i - 1) * comb(i, k) * _alternating(i, k, m)
        for i in range(k, n + 1)
    )


def shi_face_count(n: int, k: int, m: int) -> int:
    if n == 0:
        return int(k == 0)
    if not 1 <= k <= n:
        return 0
    return comb(n, k) * sum(
        (-1) ** i * comb(n - k, i) * (m * (n - i) + 1) ** (n - 1) for i in range(n - k + 1)
    )


def shi_twodim_count(n: int, m: int) -> int:
    """Two-dimensional m-Shi faces in R^n (n >= 2)."""
    if n < 2:
        return 0
    q, r = divmod(factorial(n) * (n - 1) * (m * (n + 2) + 2) * m ** (n - 2), 4)
    assert r == 0
    return q


FACE_COUNTS: dict[str, Callable[[int, int, int], int]] = {
    "braid": lambda n, k, m: braid_face_count(n, k),
    "m_catalan": catalan_face_count,
    "m_shi": shi_face_count,
}


@dataclass
class CountTable:
    kind: str
    m: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    @classmethod
    def build(cls, kind: str, m: int, n_max: int) -> "CountTable":
        fn = FACE_COUNTS[kind]
        entries = {(n, k): fn(n, k, m) for n in range(1, n_max + 1) for k in range(1, n + 1)}
        return cls(kind, m, entries)

    def row(self, n: int) -> list[int]:
        return [self.entries[(n, k)] for k in range(1, n + 1)]


# -- truncated series --------------------------------------------------------


Poly = dict  # y-degree -> Fraction


def _padd(a: Poly, b: Poly, scale=1) -> Poly:
    out = dict(a)
    for d, c in b.items():
        out[d] = out.get(d, 0) + scale * c
    return {d: c for d, c in out.items() if c}


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for d1, c1 in a.items():
        for d2, c2 in b.items():
            out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
    return {d: c for d, c in out.items() if c}


class TruncatedSeries:
    """Bivariate series truncated above x-degree ``N``; ``terms[i]`` is a polynomial in y."""

    def __init__(self, N: int, terms: Optional[list[Poly]] = None):
        self.N = N
        terms = list(terms or [])[: N + 1]
        self.terms = [{d: Fraction(c) for d, c in t.items() if c} for t in terms]
        self.terms += [{} for _ in range(N + 1 - len(self.terms))]

    @classmethod
    def constant(cls, N: int, c=1) -> "TruncatedSeries":
        return cls(N, [{0: c}])

    @classmethod
    def from_coefficients(cls, N: int, coeff: dict[tuple[int, int], Fraction]) -> "TruncatedSeries":
        terms: list[Poly] = [{} for _ in range(N + 1)]
        for (i, j), c in coeff.items():
            if i <= N:
                terms[i][j] = c
        return cls(N, terms)

    @classmethod
    def from_egf(cls, N: int, count: Callable[[int, int], int], constant: int = 1) -> "TruncatedSeries":
        """``sum count(n, k) x^n y^k / n!`` with ``count`` used for ``n >= 1``."""
        terms: list[Poly] = [{0: constant}]
        for n in range(1, N + 1):
            terms.append({k: Fraction(count(n, k), factorial(n)) for k in range(n + 1)})
        return cls(N, terms)

    @classmethod
    def exp_x_minus_one(cls, N: int) -> "TruncatedSeries":
        return cls(N, [{}] + [{0: Fraction(1, factorial(n))} for n in range(1, N + 1)])

    @classmethod
    def x(cls, N: int) -> "TruncatedSeries":
        return cls(N, [{}, {0: 1}])

    @classmethod
    def y(cls, N: int) -> "TruncatedSeries":
        return cls(N, [{1: 1}])

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.terms[i].get(j, Fraction(0))

    def coefficients(self) -> dict[tuple[int, int], Fraction]:
        return {(i, j): c for i, t in enumerate(self.terms) for j, c in t.items()}

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if other.N != self.N:
                raise ValueError("truncation orders differ")
            return other
        return TruncatedSeries.constant(self.N, other)

    def __add__(self, other):
        other = self._coerce(other)
        return TruncatedSeries(self.N, [_padd(a, b) for a, b in zip(self.terms, other.terms)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.N, [{d: -c for d, c in t.items()} for t in self.terms])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: list[Poly] = [{} for _ in range(self.N + 1)]
        for i, a in enumerate(self.terms):
            if not a:
                continue
            for j in range(self.N + 1 - i):
                if other.terms[j]:
                    out[i + j] = _padd(out[i + j], _pmul(a, other.terms[j]))
        return TruncatedSeries(self.N, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result, base = TruncatedSeries.constant(self.N), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self.N == other.N and self.terms == other.terms

    def exp(self) -> "TruncatedSeries":
        """exp(g) for g with no x^0 part, via n f_n = sum_k k g_k f_{n-k}."""
        if self.terms[0]:
            raise ValueError("exp needs a series with zero x^0 part")
        f: list[Poly] = [{0: Fraction(1)}]
        for n in range(1, self.N + 1):
            acc: Poly = {}
            for k in range(1, n + 1):
                if self.terms[k] and f[n - k]:
                    acc = _padd(acc, _pmul(self.terms[k], f[n - k]), k)
            f.append({d: c / n for d, c in acc.items()})
        return TruncatedSeries(self.N, f)


@dataclass
class SeriesReport:
    name: str
    m: int
    N: int
    max_discrepancy: Fraction
    first_failure: Optional[tuple[int, int]]  # (x-degree, y-degree)

    @property
    def passed(self) -> bool:
        return self.first_failure is None

    def summary(self) -> str:
        if self.passed:
            return f"{self.name} m={self.m} N={self.N}: pass"
        i, j = self.first_failure
        return (
            f"{self.name} m={self.m} N={self.N}: FAIL at x^{i} y^{j}, "
            f"max discrepancy {self.max_discrepancy}"
        )


def _compare(name: str, m: int, lhs: TruncatedSeries, rhs: TruncatedSeries) -> SeriesReport:
    diff = lhs - rhs
    bad = sorted((i, j) for (i, j), c in diff.coefficients().items() if c)
    worst = max((abs(c) for c in diff.coefficients().values()), default=Fraction(0))
    return SeriesReport(name, m, lhs.N, worst, bad[0] if bad else None)


def catalan_series(m: int, N: int, count=None) -> TruncatedSeries:
    count = count or (lambda n, k: catalan_face_count(n, k, m))
    return TruncatedSeries.from_egf(N, count)


def shi_series(m: int, N: int, count=None) -> TruncatedSeries:
    count = count or (lambda n, k: shi_face_count(n, k, m))
    return TruncatedSeries.from_egf(N, count)


def verify_catalan_gf(m: int, N: int, count=None) -> SeriesReport:
    """Check C = 1 + (e^x - 1)((1 + y) C^(m+1) - C) through x-degree N.

    ``count(n, k)`` overrides the closed form (used to test the checker).
    """
    C = catalan_series(m, N, count)
    y = TruncatedSeries.y(N)
    rhs = 1 + TruncatedSeries.exp_x_minus_one(N) * ((1 + y) * C ** (m + 1) - C)
    return _compare("catalan_gf", m, C, rhs)


def verify_shi_gf(m: int, N: int, count=None) -> SeriesReport:
    """Check S = exp(x (y + 1) S^m - x) through x-degree N."""
    S = shi_series(m, N, count)
    x, y = TruncatedSeries.x(N), TruncatedSeries.y(N)
    rhs = (x * (y + 1) * S ** m - x).exp()
    return _compare("shi_gf", m, S, rhs)


@dataclass
class IdentityReport:
    name: str
    checked: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "pass" if self.passed else f"FAIL at {self.failures[0]}"
        return f"{self.name}: {self.checked} cases, {status}"


def verify_m1_simplification(i_max: int) -> IdentityReport:
    rep = IdentityReport("m1_simplification", 0)
    for i in range(1, i_max + 1):
        for k in range(1, i + 1):
            rep.checked += 1
            lhs = _alternating(i, k, 1)
            rhs = comb(i + k, k - 1)
            if lhs != rhs:
                rep.failures.append((i, k, lhs, rhs))
    return rep


def verify_dash_tree_sum(n_max: int, m: int) -> IdentityReport:
    """c(n, k) = sum_i S(n, i) i! h(i, k)."""
    rep = IdentityReport(f"dash_tree_sum m={m}", 0)
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            rep.checked += 1
            lhs = catalan_face_count(n, k, m)
            rhs = sum(stirling2(n, i) * factorial(i) * dash_tree_count(i, k, m) for i in range(1, n + 1))
            if lhs != rhs:
                rep.failures.append((n, k, lhs, rhs))
    return rep


def verify_shi_twodim(n_max: int, m_max: int) -> IdentityReport:
    rep = IdentityReport("shi_twodim", 0)
    for m in range(1, m_max + 1):
        for n in range(2, n_max + 1):
            rep.checked += 1
            a, b = shi_twodim_count(n, m), shi_face_count(n, 2, m)
            if a != b:
                rep.failures.append((n, m, a, b))
    return rep
