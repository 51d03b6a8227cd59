"""Random exact instances shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from lowprev import (
    BernsteinPoly,
    CategorySpace,
    CountVector,
    CredalLowerPrevision,
    Domain,
    Gamble,
    LinearPrevision,
    SimplexDistribution,
    SimplexLowerPrevision,
    SimplexPoint,
)

AB = CategorySpace(["a", "b"])
ABC = CategorySpace(["a", "b", "c"])


def rational(rng: random.Random, lo: int = -20, hi: int = 20, den: int = 12) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_gamble(rng: random.Random, domain: Domain) -> Gamble:
    return Gamble(domain, tuple(rational(rng) for _ in range(len(domain))))


def random_mass(rng: random.Random, size: int, sparsity: float = 0.0) -> tuple[Fraction, ...]:
    while True:
        weights = [0 if rng.random() < sparsity else rng.randint(1, 9) for _ in range(size)]
        total = sum(weights)
        if total:
            return tuple(Fraction(w, total) for w in weights)


def random_linear(rng: random.Random, domain: Domain, sparsity: float = 0.0) -> LinearPrevision:
    return LinearPrevision(domain, random_mass(rng, len(domain), sparsity))


def random_credal(rng: random.Random, domain: Domain, max_vertices: int = 4, sparsity: float = 0.0) -> CredalLowerPrevision:
    k = rng.randint(1, max_vertices)
    return CredalLowerPrevision(tuple(random_linear(rng, domain, sparsity) for _ in range(k)))


def random_theta(rng: random.Random, space: CategorySpace, allow_zero: bool = True) -> SimplexPoint:
    lo = 0 if allow_zero else 1
    while True:
        weights = [rng.randint(lo, 9) for _ in space]
        if sum(weights):
            total = sum(weights)
            return SimplexPoint(space, tuple(Fraction(w, total) for w in weights))


def random_poly(rng: random.Random, space: CategorySpace, degree: int) -> BernsteinPoly:
    n = len(Domain.counts(space, degree))
    return BernsteinPoly(space, degree, tuple(rational(rng) for _ in range(n)))


def random_simplex_distribution(rng: random.Random, space: CategorySpace, max_support: int = 3) -> SimplexDistribution:
    thetas: list[SimplexPoint] = []
    for _ in range(rng.randint(1, max_support)):
        t = random_theta(rng, space)
        if t not in thetas:
            thetas.append(t)
    weights = random_mass(rng, len(thetas))
    return SimplexDistribution(tuple(zip(thetas, weights)))


def random_simplex_lp(rng: random.Random, space: CategorySpace, vertices: int = 2, max_support: int = 3) -> SimplexLowerPrevision:
    return SimplexLowerPrevision(
        tuple(random_simplex_distribution(rng, space, max_support) for _ in range(vertices))
    )


def cv(space: CategorySpace, *counts: int) -> CountVector:
    return CountVector(space, tuple(counts))
