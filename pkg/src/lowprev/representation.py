"""Countable exchangeable sequences and their representation on the simplex.

A lower prevision on polynomials over the simplex is modelled as the lower
envelope of finitely supported distributions on the simplex. It generates a
time-consistent family of count distributions, one per sample size, and can
be read back from such a family by evaluating Bernstein coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .bernstein import (
    BernsteinPoly,
    SimplexPoint,
    basis_eval,
    bernstein_approximant,
    elevate_to,
    evaluate,
    expression_polynomial,
    from_monomials,
    mn,
)
from .combinatorics import CategorySpace, nu
from .errors import (
    DegreeError,
    DomainMismatchError,
    InconsistentFamilyError,
    ValidationError,
)
from .exchangeability import exchangeable_from_count, muhy_gamble
from .expr import Expression
from .gambles import COUNT, TUPLE, Domain, Gamble, as_fraction
from .lp import in_convex_hull, separating_direction
from .previsions import CredalLowerPrevision, LinearPrevision


@dataclass(frozen=True)
class SimplexDistribution:
    """Finitely supported probability distribution on the simplex."""

    support: tuple[tuple[SimplexPoint, Fraction], ...]

    def __post_init__(self) -> None:
        support = tuple((theta, as_fraction(w)) for theta, w in self.support)
        if not support:
            raise ValidationError("a simplex distribution needs at least one support point")
        space = support[0][0].space
        if any(theta.space != space for theta, _ in support):
            raise DomainMismatchError("support points live on different category spaces")
        if any(w < 0 for _, w in support):
            raise ValidationError("negative weight in simplex distribution")
        total = sum((w for _, w in support), Fraction(0))
        if total != 1:
            raise ValidationError(f"simplex distribution weights sum to {total}, expected 1")
        if len({theta for theta, _ in support}) != len(support):
            raise ValidationError("repeated support point in simplex distribution")
        object.__setattr__(self, "support", support)

    @classmethod
    def point_mass(cls, theta: SimplexPoint) -> "SimplexDistribution":
        return cls(((theta, Fraction(1)),))

    @property
    def space(self) -> CategorySpace:
        return self.support[0][0].space

    def expectation(self, p: BernsteinPoly) -> Fraction:
        return sum((w * evaluate(p, theta) for theta, w in self.support if w), Fraction(0))


@dataclass(frozen=True)
class SimplexLowerPrevision:
    """Lower envelope of finitely many simplex distributions."""

    vertices: tuple[SimplexDistribution, ...]

    def __post_init__(self) -> None:
        vertices = tuple(self.vertices)
        if not vertices:
            raise ValidationError("a simplex lower prevision needs at least one vertex")
        if any(v.space != vertices[0].space for v in vertices):
            raise DomainMismatchError("vertices live on different category spaces")
        object.__setattr__(self, "vertices", vertices)

    @classmethod
    def point_mass(cls, theta: SimplexPoint) -> "SimplexLowerPrevision":
        return cls((SimplexDistribution.point_mass(theta),))

    @classmethod
    def envelope_of_points(cls, thetas: Iterable[SimplexPoint]) -> "SimplexLowerPrevision":
        return cls(tuple(SimplexDistribution.point_mass(t) for t in thetas))

    @property
    def space(self) -> CategorySpace:
        return self.vertices[0].space


def r_eval(R: SimplexLowerPrevision, p: BernsteinPoly) -> Fraction:
    """Lower prevision of the polynomial ``p``."""
    if p.space != R.space:
        raise DomainMismatchError(f"polynomial over {list(p.space)}, model over {list(R.space)}")
    return min(v.expectation(p) for v in R.vertices)


def r_upper(R: SimplexLowerPrevision, p: BernsteinPoly) -> Fraction:
    return -r_eval(R, -p)


def _count_vertex(dist: SimplexDistribution, n: int) -> LinearPrevision:
    dom = Domain.counts(dist.space, n)
    mass = []
    for m in dom.points:
        mass.append(sum((w * basis_eval(m, theta) for theta, w in dist.support if w), Fraction(0)))
    return LinearPrevision(dom, tuple(mass))


def count_model(R: SimplexLowerPrevision, n: int) -> CredalLowerPrevision:
    if n < 1:
        raise ValidationError(f"sample size must be at least 1, got {n}")
    return CredalLowerPrevision(tuple(_count_vertex(v, n) for v in R.vertices))


def family_from_r(R: SimplexLowerPrevision, n: int) -> tuple[CredalLowerPrevision, CredalLowerPrevision]:
    """The models on ``X^n`` and on count vectors with total ``n`` generated by ``R``."""
    Q = count_model(R, n)
    return exchangeable_from_count(Q), Q


@dataclass(frozen=True)
class CountFamily:
    """Count distributions for sample sizes ``1..horizon``; ``members[n-1]`` is for size ``n``."""

    members: tuple[CredalLowerPrevision, ...]

    def __post_init__(self) -> None:
        members = tuple(self.members)
        if not members:
            raise ValidationError("a count family needs horizon at least 1")
        space = members[0].domain.space
        for n, Q in enumerate(members, start=1):
            if Q.domain != Domain.counts(space, n):
                raise DomainMismatchError(f"member {n} lives on {Q.domain}, expected counts^{n}")
        object.__setattr__(self, "members", members)

    @property
    def horizon(self) -> int:
        return len(self.members)

    @property
    def space(self) -> CategorySpace:
        return self.members[0].domain.space

    def __getitem__(self, n: int) -> CredalLowerPrevision:
        if not 1 <= n <= self.horizon:
            raise DegreeError(f"sample size {n} outside the horizon 1..{self.horizon}")
        return self.members[n - 1]


def count_family(R: SimplexLowerPrevision, horizon: int) -> CountFamily:
    return CountFamily(tuple(count_model(R, n) for n in range(1, horizon + 1)))


def multinomial_family(theta: SimplexPoint, horizon: int) -> CountFamily:
    return count_family(SimplexLowerPrevision.point_mass(theta), horizon)


def r_values_by_degree(F: CountFamily, p: BernsteinPoly) -> dict[int, Fraction]:
    """``Q^n(b_p^n)`` for every admissible ``n`` from ``deg p`` up to the horizon."""
    if p.space != F.space:
        raise DomainMismatchError(f"polynomial over {list(p.space)}, family over {list(F.space)}")
    low = max(p.degree, 1)
    if low > F.horizon:
        raise DegreeError(f"polynomial degree {p.degree} exceeds the family horizon {F.horizon}")
    return {n: F[n].lower(elevate_to(p, n).as_gamble()) for n in range(low, F.horizon + 1)}


def r_from_family(F: CountFamily, p: BernsteinPoly) -> Fraction:
    """Representing lower prevision of ``p`` read off a count family.

    The value at the lowest admissible degree must agree with every higher
    degree up to the horizon; disagreement means the family is not time
    consistent.
    """
    values = r_values_by_degree(F, p)
    distinct = set(values.values())
    if len(distinct) != 1:
        raise InconsistentFamilyError(
            "Bernstein evaluation depends on the degree: "
            + ", ".join(f"n={n}: {v}" for n, v in values.items())
        )
    return distinct.pop()


def push_count_vertex(q: LinearPrevision, n: int) -> LinearPrevision:
    """Count distribution of the first ``n`` draws when the urn of ``q`` is sampled without replacement."""
    dom = q.domain
    if dom.kind != COUNT or n > dom.N:
        raise DomainMismatchError(f"cannot push {dom} down to size {n}")
    target = Domain.counts(dom.space, n)
    mass = [Fraction(0)] * len(target)
    for big, w in zip(dom.points, q.mass):
        if not w:
            continue
        scale = w / nu(big)
        for i, m in enumerate(target.points):
            if m <= big:
                mass[i] += scale * nu(m) * nu(big - m)
    return LinearPrevision(target, tuple(mass))


@dataclass(frozen=True)
class ConsistencyReport:
    consistent: bool
    n: int | None = None
    larger: int | None = None
    witness: Gamble | None = None
    lower_at_n: Fraction | None = None
    lower_from_larger: Fraction | None = None

    def __bool__(self) -> bool:
        return self.consistent


def _witness(small: CredalLowerPrevision, pushed: CredalLowerPrevision) -> Gamble:
    dom = small.domain
    for m in dom.points:
        for sign in (1, -1):
            h = Gamble.indicator(dom, [m]) * sign
            if small.lower(h) != pushed.lower(h):
                return h
    a = [v.mass for v in small.vertices]
    b = [v.mass for v in pushed.vertices]
    for point, others in [(v, a) for v in b] + [(v, b) for v in a]:
        direction = separating_direction(point, others)
        if direction is not None:
            return Gamble(dom, direction)
    raise AssertionError("hulls differ but no separating gamble was found")


def check_time_consistency(F: CountFamily) -> ConsistencyReport:
    """Compare each ``Q^n`` with the hypergeometric push-down of every ``Q^(n+k)``.

    Consistency requires equal convex hulls, decided by exact membership LPs
    in both directions.
    """
    for larger in range(2, F.horizon + 1):
        big = F[larger]
        for n in range(1, larger):
            small = F[n]
            pushed = CredalLowerPrevision(tuple(push_count_vertex(q, n) for q in big.vertices))
            a = [v.mass for v in small.vertices]
            b = [v.mass for v in pushed.vertices]
            if all(in_convex_hull(v, a) for v in b) and all(in_convex_hull(v, b) for v in a):
                continue
            h = _witness(small, pushed)
            return ConsistencyReport(False, n, larger, h, small.lower(h), pushed.lower(h))
    return ConsistencyReport(True)


def frequency_prevision(R: SimplexLowerPrevision, h: Expression, n: int) -> Fraction:
    """Lower prevision of ``h`` evaluated at the sample frequency after ``n`` draws."""
    return r_eval(R, bernstein_approximant(h, n, R.space))


def polynomial_reference(R: SimplexLowerPrevision, h: Expression) -> Fraction | None:
    """``R(h)`` when ``h`` is a polynomial, else None."""
    q = expression_polynomial(h, R.space)
    if q is None:
        return None
    return r_eval(R, from_monomials(q, q.total_degree))


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    value: Fraction
    reference: Fraction | None
    gap: Fraction | None


def convergence_table(R: SimplexLowerPrevision, h: Expression, ns: Sequence[int]) -> list[ConvergenceRow]:
    reference = polynomial_reference(R, h)
    rows = []
    for n in ns:
        value = frequency_prevision(R, h, n)
        gap = None if reference is None else value - reference
        rows.append(ConvergenceRow(n, value, reference, gap))
    return rows


def natural_extension_cylinder(source: SimplexLowerPrevision | CountFamily, f: Gamble) -> Fraction:
    """Lower prevision of a gamble on the first ``m`` variables of the sequence.

    For a gamble on ``X^m`` the supremum over lower projections is reached at
    ``n = m``, so this is the ``X^m`` marginal evaluated at ``f``.
    """
    if f.domain.kind != TUPLE:
        raise DomainMismatchError(f"expected a gamble on a tuple space, got {f.domain}")
    m = f.domain.N
    if m < 1:
        raise ValidationError("a cylinder gamble depends on at least one variable")
    if isinstance(source, SimplexLowerPrevision):
        if source.space != f.domain.space:
            raise DomainMismatchError("gamble and model use different category spaces")
        return min(
            sum((w * mn(f, theta) for theta, w in v.support if w), Fraction(0)) for v in source.vertices
        )
    if isinstance(source, CountFamily):
        if m > source.horizon:
            raise DegreeError(f"gamble on X^{m} beyond the family horizon {source.horizon}")
        return source[m].lower(muhy_gamble(f))
    raise ValidationError(f"unsupported model type {type(source).__name__}")
