"""
cyclotomic.py
--------------------------------
Exact arithmetic in cyclotomic fields Q(zeta_N).

A CycloNumber stores its coordinates in the power basis
1, zeta_N, ..., zeta_N^(phi(N)-1) after reduction modulo Phi_N, so two numbers
at the same level are equal iff their coordinate tuples are equal. Numbers at
different levels are compared after embedding both into lcm(N, M).

Only ring operations are provided (no inverses).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from sympy import Matrix, Poly, Rational, Symbol, divisors, mobius, totient

_x = Symbol("x")


# ============================================================
# 1️⃣ Cyclotomic polynomials
# ============================================================
@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Phi_n as integer coefficients, constant term first.

    Computed as (x^n - 1) divided by the product of Phi_d over proper divisors d.
    """
    if n < 1:
        raise ValueError(f"cyclotomic level must be positive, got {n}")
    numerator = Poly(_x**n - 1, _x, domain="ZZ")
    denominator = Poly(1, _x, domain="ZZ")
    for d in divisors(n)[:-1]:
        denominator *= Poly(list(reversed(cyclotomic_poly(d))), _x, domain="ZZ")
    phi = numerator.exquo(denominator)
    return tuple(int(c) for c in reversed(phi.all_coeffs()))


def _reduce(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    work = [Fraction(c) for c in coeffs]
    work += [Fraction(0)] * (deg - len(work))
    # Phi_n is monic, so plain long division stays in Q.
    for k in range(len(work) - 1, deg - 1, -1):
        c = work[k]
        if c:
            shift = k - deg
            for j in range(deg):
                work[shift + j] -= c * phi[j]
            work[k] = Fraction(0)
    return tuple(work[:deg])


# ============================================================
# 2️⃣ CycloNumber
# ============================================================
@dataclass(frozen=True, eq=False)
class CycloNumber:
    level: int
    coeffs: tuple[Fraction, ...]

    @classmethod
    def rational(cls, value, level: int = 1) -> CycloNumber:
        return cls(level, _reduce([Fraction(value)], level))

    @classmethod
    def zero(cls, level: int = 1) -> CycloNumber:
        return cls.rational(0, level)

    # --- structure ---
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def minimal(self) -> CycloNumber:
        """The same number written at the smallest level that contains it."""
        return _minimal(self.level, self.coeffs)

    def nonzero_terms(self):
        """Yield (power of zeta, rational coordinate) for nonzero coordinates."""
        for k, c in enumerate(self.coeffs):
            if c:
                yield k, c

    def embed(self, m: int) -> CycloNumber:
        if m % self.level:
            raise ValueError(f"cannot embed level {self.level} into level {m}")
        if m == self.level:
            return self
        step = m // self.level
        spread = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for k, c in enumerate(self.coeffs):
            spread[k * step] = c
        return CycloNumber(m, _reduce(spread, m))

    def coordinates(self, level: int) -> tuple[Fraction, ...]:
        return self.embed(level).coeffs

    def trace(self) -> Fraction:
        """Normalised trace Tr(x)/phi(N); unchanged by embedding."""
        n = self.level
        total = Fraction(0)
        for k, c in self.nonzero_terms():
            m = n // gcd(k, n)
            total += c * Fraction(int(mobius(m)), int(totient(m)))
        return total

    # --- arithmetic ---
    def _aligned(self, other) -> tuple[CycloNumber, CycloNumber]:
        other = _coerce(other)
        if other.level == self.level:
            return self, other
        level = lcm(self.level, other.level)
        return self.embed(level), other.embed(level)

    def __add__(self, other) -> CycloNumber:
        a, b = self._aligned(other)
        return CycloNumber(a.level, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycloNumber:
        return CycloNumber(self.level, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> CycloNumber:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> CycloNumber:
        return _coerce(other) - self

    def __mul__(self, other) -> CycloNumber:
        a, b = self._aligned(other)
        product = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in a.nonzero_terms():
            for j, y in b.nonzero_terms():
                product[i + j] += x * y
        return CycloNumber(a.level, _reduce(product, a.level))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> CycloNumber:
        if exponent < 0:
            raise ValueError("negative powers need inverses, which are not supported")
        result = CycloNumber.rational(1, self.level)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # --- comparison ---
    def __eq__(self, other) -> bool:
        if not isinstance(other, (CycloNumber, int, Fraction)):
            return NotImplemented
        a, b = self._aligned(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        return hash(self.trace())

    def __repr__(self) -> str:
        return f"CycloNumber({self.level}, {str(self)!r})"

    def __str__(self) -> str:
        parts = []
        for k, c in self.nonzero_terms():
            if k == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"z{self.level}^{k}")
            else:
                parts.append(f"({c})*z{self.level}^{k}")
        return " + ".join(parts) if parts else "0"


def _coerce(value) -> CycloNumber:
    if isinstance(value, CycloNumber):
        return value
    if isinstance(value, (int, Fraction)):
        return CycloNumber.rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as a cyclotomic number")


# ============================================================
# 3️⃣ Roots of unity
# ============================================================
def root_of_unity(n: int, a: int) -> CycloNumber:
    """zeta_n^a at level n."""
    if n < 1:
        raise ValueError(f"root of unity order must be positive, got {n}")
    return _root(n, a % n)


@lru_cache(maxsize=4096)
def _root(n: int, k: int) -> CycloNumber:
    return CycloNumber(n, _reduce([Fraction(0)] * k + [Fraction(1)], n))


def _rational(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


@lru_cache(maxsize=8192)
def _minimal(n: int, coeffs: tuple[Fraction, ...]) -> CycloNumber:
    # Q(zeta_d) sits inside Q(zeta_n) for d | n; take the first d whose image holds the number.
    target = Matrix([_rational(c) for c in coeffs])
    for d in divisors(n)[:-1]:
        basis = [root_of_unity(d, j).embed(n).coeffs for j in range(int(totient(d)))]
        system = Matrix([[_rational(b[i]) for b in basis] for i in range(len(coeffs))])
        try:
            solution, _ = system.gauss_jordan_solve(target)
        except ValueError:
            continue
        return CycloNumber(d, tuple(Fraction(int(v.p), int(v.q)) for v in solution))
    return CycloNumber(n, coeffs)


def add(a: CycloNumber, b: CycloNumber) -> CycloNumber:
    return a + b


def sub(a: CycloNumber, b: CycloNumber) -> CycloNumber:
    return a - b


def mul(a: CycloNumber, b: CycloNumber) -> CycloNumber:
    return a * b


def neg(a: CycloNumber) -> CycloNumber:
    return -a


def is_zero(a: CycloNumber) -> bool:
    return a.is_zero()


def embed(a: CycloNumber, m: int) -> CycloNumber:
    return a.embed(m)
