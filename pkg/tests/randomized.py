"""Seeded generators for the property suites."""

from fractions import Fraction

from conjugacy_legs import JordanClass
from cyclotomic import CycloNumber, root_of_unity
from diagram_builder import ProblemInput
from puiseux_circles import ExpFactor, circle_of


def random_coeff(rng) -> CycloNumber:
    choices = [
        CycloNumber.rational(1),
        CycloNumber.rational(-1),
        CycloNumber.rational(2),
        CycloNumber.rational(Fraction(1, 2)),
        root_of_unity(3, 1),
        root_of_unity(4, 1),
        root_of_unity(3, 1) + 1,
        root_of_unity(4, 1) * 3 - 1,
    ]
    return rng.choice(choices)


def random_factor(rng, max_den: int = 4, max_terms: int = 2, unramified: bool = False) -> ExpFactor:
    if rng.random() < 0.15:
        return ExpFactor.zero()
    den = 1 if unramified else rng.randint(1, max_den)
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        terms.append((Fraction(rng.randint(1, 3 * den), den), random_coeff(rng)))
    return ExpFactor.from_terms(terms)


def random_cyclo(rng, level: int) -> CycloNumber:
    total = CycloNumber.zero(level)
    for k in range(level):
        if rng.random() < 0.5:
            total = total + root_of_unity(level, k) * Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return total


def random_jordan_class(rng, n: int) -> JordanClass:
    blocks = []
    remaining = n
    while remaining:
        size = rng.randint(1, min(remaining, 3))
        blocks.append(size)
        remaining -= size
    k = rng.randint(1, len(blocks))
    grouped: dict[str, list[int]] = {}
    for size in blocks:
        grouped.setdefault(f"l{rng.randrange(k)}", []).append(size)
    return JordanClass.of(grouped.items())


def random_circles(rng, count: int, **kwargs) -> list:
    circles = []
    while len(circles) < count:
        circle = circle_of(random_factor(rng, **kwargs))
        if circle not in circles:
            circles.append(circle)
    return circles


def random_problem(rng, max_circles: int = 3, max_mult: int = 3, max_poles: int = 3) -> ProblemInput:
    circles = random_circles(rng, rng.randint(1, max_circles))
    infinity = []
    for circle in circles:
        mult = rng.randint(1, max_mult)
        infinity.append((circle, mult, random_jordan_class(rng, mult)))
    n = sum(c.ram * mult for c, mult, _ in infinity)
    poles = [(str(k), random_jordan_class(rng, n)) for k in range(rng.randint(0, max_poles))]
    return ProblemInput.create(infinity, poles)
