"""
puiseux_circles.py
--------------------------------
Exponential factors q (Puiseux polynomials in x with positive exponents and
cyclotomic coefficients), circles <q> as Galois orbits, and the irregular
classes built from them:
- ram(q): lcm of the exponent denominators
- slope(q): the largest exponent
- Irr<q> = ram * slope
- Hom(<q1>, <q2>): the class of all differences of conjugates, grouped by orbit
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from cyclotomic import CycloNumber, root_of_unity


# ============================================================
# 1️⃣ Exponential factors
# ============================================================
@dataclass(frozen=True, eq=False)
class ExpFactor:
    """q = sum of c * x^e, stored by descending exponent, no zero coefficients."""

    terms: tuple[tuple[Fraction, CycloNumber], ...] = ()

    @classmethod
    def from_terms(cls, terms: Mapping | Iterable) -> ExpFactor:
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        merged: dict[Fraction, CycloNumber] = {}
        for exponent, coeff in pairs:
            exponent = Fraction(exponent)
            if not isinstance(coeff, CycloNumber):
                coeff = CycloNumber.rational(coeff)
            if exponent <= 0:
                if coeff.is_zero():
                    continue
                if exponent == 0:
                    raise ValueError("constant term in exponential factor")
                raise ValueError(f"nonpositive exponent {exponent}")
            merged[exponent] = merged[exponent] + coeff if exponent in merged else coeff
        kept = tuple(
            (e, merged[e]) for e in sorted(merged, reverse=True) if not merged[e].is_zero()
        )
        return cls(kept)

    @classmethod
    def zero(cls) -> ExpFactor:
        return cls(())

    @classmethod
    def monomial(cls, coeff, exponent) -> ExpFactor:
        return cls.from_terms([(exponent, coeff)])

    @property
    def exponents(self) -> tuple[Fraction, ...]:
        return tuple(e for e, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponent) -> CycloNumber:
        for e, c in self.terms:
            if e == exponent:
                return c
        return CycloNumber.zero()

    def __add__(self, other: ExpFactor) -> ExpFactor:
        return ExpFactor.from_terms(list(self.terms) + list(other.terms))

    def __neg__(self) -> ExpFactor:
        return ExpFactor(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: ExpFactor) -> ExpFactor:
        return self + (-other)

    def scale(self, gamma) -> ExpFactor:
        return ExpFactor.from_terms([(e, c * gamma) for e, c in self.terms])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpFactor):
            return NotImplemented
        return self.exponents == other.exponents and all(
            a == b for (_, a), (_, b) in zip(self.terms, other.terms)
        )

    def __hash__(self) -> int:
        return hash(self.terms)

    def to_dsl(self) -> str:
        """Render in the factor-string syntax accepted by the input parser."""
        if not self.terms:
            return "0"
        pieces: list[tuple[str, str]] = []
        for exponent, coeff in self.terms:
            mono = _format_monomial(exponent)
            for k, value in coeff.nonzero_terms():
                sign = "-" if value < 0 else "+"
                magnitude = abs(value)
                number = "" if magnitude == 1 else _format_rational(magnitude)
                if k:
                    root = f"z{coeff.level}^{k}"
                    prefix = f"{number} {root}" if number else root
                    pieces.append((sign, f"{prefix} {mono}"))
                else:
                    pieces.append((sign, f"{number}{mono}"))
        first_sign, first = pieces[0]
        text = f"-{first}" if first_sign == "-" else first
        for sign, piece in pieces[1:]:
            text += f" {sign} {piece}"
        return text

    def __str__(self) -> str:
        return self.to_dsl()

    def __repr__(self) -> str:
        return f"ExpFactor({self.to_dsl()!r})"


def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"({value.numerator}/{value.denominator})"


def _format_monomial(exponent: Fraction) -> str:
    if exponent == 1:
        return "x"
    if exponent.denominator == 1:
        return f"x^{exponent.numerator}"
    return f"x^({exponent.numerator}/{exponent.denominator})"


def ram(q: ExpFactor) -> int:
    return lcm(1, *(e.denominator for e in q.exponents))


def slope(q: ExpFactor) -> Fraction:
    return q.exponents[0] if q.terms else Fraction(0)


def conjugate(q: ExpFactor, a: int) -> ExpFactor:
    """Galois twist x^(1/r) -> zeta_r^a x^(1/r), with r = ram(q)."""
    r = ram(q)
    twisted = []
    for exponent, coeff in q.terms:
        k = exponent * r
        assert k.denominator == 1
        twisted.append((exponent, coeff * root_of_unity(r, a * k.numerator)))
    return ExpFactor(tuple(twisted))


# ============================================================
# 2️⃣ Circles
# ============================================================
def _order_key(q: ExpFactor, level: int):
    # Coordinates are negated so the representative leads with a positive coefficient.
    return q.exponents, tuple(tuple(-v for v in c.coordinates(level)) for _, c in q.terms)


@dataclass(frozen=True, eq=False)
class Circle:
    rep: ExpFactor
    ram: int

    @property
    def slope(self) -> Fraction:
        return slope(self.rep)

    @property
    def irr(self) -> int:
        return irr_circle(self)

    def orbit(self) -> list[ExpFactor]:
        return [conjugate(self.rep, a) for a in range(self.ram)]

    def scale(self, gamma) -> Circle:
        return circle_of(self.rep.scale(gamma))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Circle):
            return NotImplemented
        if self.ram != other.ram or self.rep.exponents != other.rep.exponents:
            return False
        return any(self.rep == q for q in other.orbit())

    def __hash__(self) -> int:
        return hash((self.ram, self.rep.exponents))

    def __str__(self) -> str:
        return f"⟨{self.rep.to_dsl()}⟩"

    def __repr__(self) -> str:
        return f"Circle({self.rep.to_dsl()!r}, ram={self.ram})"


def _minimal_levels(q: ExpFactor) -> ExpFactor:
    return ExpFactor(tuple((e, c.minimal()) for e, c in q.terms))


def circle_of(q: ExpFactor) -> Circle:
    """The circle through q; its rep depends only on the orbit, not on how coefficients are stored."""
    r = ram(q)
    orbit = [_minimal_levels(conjugate(q, a)) for a in range(r)]
    level = lcm(1, *(c.level for p in orbit for _, c in p.terms))
    rep = min(orbit, key=lambda p: _order_key(p, level))
    return Circle(rep=rep, ram=r)


def irr_circle(c: Circle) -> int:
    irr = c.ram * c.slope
    assert irr.denominator == 1, f"ram*slope is not integral for {c}"
    return irr.numerator


# ============================================================
# 3️⃣ Irregular classes
# ============================================================
@dataclass(frozen=True, eq=False)
class IrregularClass:
    entries: tuple[tuple[Circle, int], ...] = ()
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Circle | ExpFactor, int]]) -> IrregularClass:
        """Sum of n * <q>; Galois-conjugate duplicates are merged with a warning."""
        merged: dict[Circle, int] = {}
        warnings = []
        for item, mult in pairs:
            circle = item if isinstance(item, Circle) else circle_of(item)
            if mult < 1:
                raise ValueError(f"multiplicity of {circle} must be positive, got {mult}")
            if circle in merged:
                warnings.append(f"circle {circle} listed twice; multiplicities summed")
                merged[circle] += mult
            else:
                merged[circle] = mult
        return cls(tuple(merged.items()), tuple(warnings))

    @property
    def circles(self) -> tuple[Circle, ...]:
        return tuple(c for c, _ in self.entries)

    @property
    def rank(self) -> int:
        return sum(n * c.ram for c, n in self.entries)

    @property
    def irr(self) -> int:
        return irr_class(self)

    def multiplicity(self, circle: Circle) -> int:
        for c, n in self.entries:
            if c == circle:
                return n
        return 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, IrregularClass):
            return NotImplemented
        return dict(self.entries) == dict(other.entries)

    def __hash__(self) -> int:
        return hash(frozenset(self.entries))

    def __str__(self) -> str:
        if not self.entries:
            return "0"
        return " + ".join(f"{n}{c}" if n > 1 else str(c) for c, n in self.entries)


def hom_class(c1: Circle, c2: Circle) -> IrregularClass:
    """Irregular class of Hom(<q1>, <q2>) from the r1*r2 differences q2' - q1'."""
    counts: dict[Circle, int] = {}
    sources = c1.orbit()
    for target in c2.orbit():
        for source in sources:
            circle = circle_of(target - source)
            counts[circle] = counts.get(circle, 0) + 1
    entries = []
    for circle, count in counts.items():
        assert count % circle.ram == 0, (
            f"orbit count {count} of {circle} in Hom({c1}, {c2}) is not divisible by {circle.ram}"
        )
        entries.append((circle, count // circle.ram))
    result = IrregularClass(tuple(entries))
    assert result.rank == c1.ram * c2.ram
    return result


def irr_class(theta: IrregularClass) -> int:
    return sum(n * irr_circle(c) for c, n in theta.entries)


def end_irr(theta: IrregularClass) -> int:
    return sum(
        ni * nj * irr_class(hom_class(ci, cj))
        for ci, ni in theta.entries
        for cj, nj in theta.entries
    )
