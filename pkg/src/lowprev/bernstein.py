"""Multivariate Bernstein polynomials on the probability simplex.

A polynomial is kept in Bernstein form at an explicit degree ``n``: one
coefficient per count vector with total ``n``. Two Bernstein forms describe
the same polynomial iff they agree after elevating both to a common degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .combinatorics import (
    CategorySpace,
    CountVector,
    count_vector,
    enumerate_count_vectors,
    nu,
)
from .errors import DegreeError, DomainMismatchError, ValidationError
from .expr import Expression
from .gambles import COUNT, TUPLE, Domain, Gamble, as_fraction


@dataclass(frozen=True)
class SimplexPoint:
    """A probability mass function ``theta`` on the categories."""

    space: CategorySpace
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coords = tuple(as_fraction(c) for c in self.coords)
        if len(coords) != len(self.space):
            raise ValidationError(f"simplex point needs {len(self.space)} coordinates, got {len(coords)}")
        if any(c < 0 for c in coords):
            raise ValidationError(f"simplex point {[str(c) for c in coords]} has a negative coordinate")
        total = sum(coords, Fraction(0))
        if total != 1:
            raise ValidationError(f"simplex coordinates sum to {total}, expected 1")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_mapping(cls, space: CategorySpace, theta: Mapping[str, object]) -> "SimplexPoint":
        coords = [Fraction(0)] * len(space)
        for label, v in theta.items():
            coords[space.index(label)] = as_fraction(v)
        return cls(space, tuple(coords))

    @classmethod
    def vertex(cls, space: CategorySpace, label: str) -> "SimplexPoint":
        return cls.from_mapping(space, {label: 1})

    @classmethod
    def frequency(cls, m: CountVector) -> "SimplexPoint":
        return cls(m.space, tuple(Fraction(c, m.N) for c in m.counts))

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.space.categories, self.coords))

    def __getitem__(self, label: str) -> Fraction:
        return self.coords[self.space.index(label)]


def _check_space(a: CategorySpace, b: CategorySpace) -> None:
    if a != b:
        raise DomainMismatchError(f"category spaces differ: {list(a)} vs {list(b)}")


def _monomial(counts: Sequence[int], theta: SimplexPoint) -> Fraction:
    out = Fraction(1)
    for c, t in zip(counts, theta.coords):
        if c:
            out *= t**c
    return out


def basis_eval(m: CountVector, theta: SimplexPoint) -> Fraction:
    """``B_m(theta) = nu(m) * prod theta_x^m_x``."""
    _check_space(m.space, theta.space)
    return nu(m) * _monomial(m.counts, theta)


@dataclass(frozen=True)
class BernsteinPoly:
    space: CategorySpace
    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise DegreeError(f"degree must be non-negative, got {self.degree}")
        coeffs = tuple(as_fraction(c) for c in self.coeffs)
        expected = len(self.count_vectors())
        if len(coeffs) != expected:
            raise ValidationError(
                f"degree {self.degree} Bernstein form needs {expected} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    def count_vectors(self) -> list[CountVector]:
        return enumerate_count_vectors(self.space, self.degree)

    @classmethod
    def from_mapping(
        cls, space: CategorySpace, degree: int, table: Mapping[CountVector, object], default: object = 0
    ) -> "BernsteinPoly":
        g = Gamble.from_mapping(Domain.counts(space, degree), table, default)
        return cls.from_gamble(g)

    @classmethod
    def from_gamble(cls, g: Gamble) -> "BernsteinPoly":
        if g.domain.kind != COUNT:
            raise DomainMismatchError(f"Bernstein coefficients live on a count space, got {g.domain}")
        return cls(g.domain.space, g.domain.N, g.values)

    @classmethod
    def constant(cls, space: CategorySpace, c: object, degree: int = 0) -> "BernsteinPoly":
        n = len(enumerate_count_vectors(space, degree))
        return cls(space, degree, (as_fraction(c),) * n)

    def as_gamble(self) -> Gamble:
        return Gamble(Domain.counts(self.space, self.degree), self.coeffs)

    def coeff(self, m: CountVector) -> Fraction:
        return self.as_gamble()(m)

    def items(self) -> Iterable[tuple[CountVector, Fraction]]:
        return zip(self.count_vectors(), self.coeffs)

    def __call__(self, theta: SimplexPoint) -> Fraction:
        return evaluate(self, theta)

    def _aligned(self, other: "BernsteinPoly") -> tuple["BernsteinPoly", "BernsteinPoly"]:
        _check_space(self.space, other.space)
        n = max(self.degree, other.degree)
        return elevate(self, n - self.degree), elevate(other, n - other.degree)

    def __add__(self, other: "BernsteinPoly") -> "BernsteinPoly":
        a, b = self._aligned(other)
        return BernsteinPoly(a.space, a.degree, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    def __sub__(self, other: "BernsteinPoly") -> "BernsteinPoly":
        return self + (-other)

    def __neg__(self) -> "BernsteinPoly":
        return BernsteinPoly(self.space, self.degree, tuple(-c for c in self.coeffs))

    def __mul__(self, scalar: object) -> "BernsteinPoly":
        c = as_fraction(scalar)
        return BernsteinPoly(self.space, self.degree, tuple(c * v for v in self.coeffs))

    __rmul__ = __mul__

    def same_polynomial(self, other: "BernsteinPoly") -> bool:
        a, b = self._aligned(other)
        return a.coeffs == b.coeffs


def evaluate(p: BernsteinPoly, theta: SimplexPoint) -> Fraction:
    """``sum_m b(m) B_m(theta)``."""
    _check_space(p.space, theta.space)
    total = Fraction(0)
    for m, c in zip(p.count_vectors(), p.coeffs):
        if c:
            total += c * basis_eval(m, theta)
    return total


def comn(g: Gamble, theta: SimplexPoint) -> Fraction:
    """Count-multinomial expectation of a gamble on count vectors."""
    return evaluate(BernsteinPoly.from_gamble(g), theta)


def mn(f: Gamble, theta: SimplexPoint) -> Fraction:
    """Multinomial (i.i.d. sampling) expectation of a gamble on ``X^n``."""
    if f.domain.kind != TUPLE:
        raise DomainMismatchError(f"multinomial expectation needs a tuple-space gamble, got {f.domain}")
    _check_space(f.domain.space, theta.space)
    total = Fraction(0)
    for z, v in f.items():
        if v:
            total += v * _monomial(count_vector(theta.space, z).counts, theta)
    return total


def elevate(p: BernsteinPoly, k: int) -> BernsteinPoly:
    """Degree elevation by ``k``; the polynomial is unchanged.

    ``b'(mu) = sum_{m <= mu} nu(m) nu(mu - m) / nu(mu) * b(m)``
    """
    if k < 0:
        raise DegreeError(f"elevation step must be non-negative, got {k}")
    if k == 0:
        return p
    space = p.space
    source = [(m, c) for m, c in zip(p.count_vectors(), p.coeffs) if c]
    out = []
    for mu in enumerate_count_vectors(space, p.degree + k):
        total = Fraction(0)
        for m, c in source:
            if m <= mu:
                total += nu(m) * nu(mu - m) * c
        out.append(total / nu(mu))
    return BernsteinPoly(space, p.degree + k, tuple(out))


def elevate_to(p: BernsteinPoly, degree: int) -> BernsteinPoly:
    if degree < p.degree:
        raise DegreeError(f"cannot lower degree {p.degree} to {degree}")
    return elevate(p, degree - p.degree)


@dataclass(frozen=True)
class MonomialForm:
    """Sum of ``coeff * prod theta_x^alpha_x`` terms."""

    space: CategorySpace
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __post_init__(self) -> None:
        terms = []
        for exps, c in self.terms:
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.space) or any(e < 0 for e in exps):
                raise ValidationError(f"bad exponent vector {exps} for {len(self.space)} categories")
            terms.append((exps, as_fraction(c)))
        object.__setattr__(self, "terms", tuple(terms))

    @classmethod
    def from_dict(cls, space: CategorySpace, poly: Mapping[tuple[int, ...], object]) -> "MonomialForm":
        return cls(space, tuple(sorted(poly.items(), reverse=True)))

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def __call__(self, theta: SimplexPoint) -> Fraction:
        return sum((c * _monomial(e, theta) for e, c in self.terms), Fraction(0))


def from_monomials(q: MonomialForm, n: int) -> BernsteinPoly:
    """Bernstein coefficients at degree ``n`` of a polynomial given by monomials.

    Each term is homogenised to degree ``n`` by multiplying with
    ``(sum theta_x)^(n - |alpha|)``, which is 1 on the simplex.
    """
    if n < q.total_degree:
        raise DegreeError(f"degree {n} is below the total degree {q.total_degree} of the polynomial")
    space = q.space
    points = enumerate_count_vectors(space, n)
    coeffs = [Fraction(0)] * len(points)
    for alpha, c in q.terms:
        if not c:
            continue
        a = CountVector(space, alpha)
        for i, m in enumerate(points):
            if a <= m:
                coeffs[i] += c * Fraction(nu(m - a), nu(m))
    return BernsteinPoly(space, n, tuple(coeffs))


def bounds(p: BernsteinPoly) -> tuple[Fraction, Fraction]:
    """Range enclosure ``[min b, max b]`` of ``p`` on the simplex."""
    return min(p.coeffs), max(p.coeffs)


def bernstein_approximant(h: Expression, n: int, space: CategorySpace) -> BernsteinPoly:
    """Degree-``n`` Bernstein polynomial with coefficients ``h(m/n)``."""
    if n < 1:
        raise DegreeError(f"approximant degree must be at least 1, got {n}")
    h.check_labels(space.categories)
    coeffs = tuple(h(SimplexPoint.frequency(m).as_dict()) for m in enumerate_count_vectors(space, n))
    return BernsteinPoly(space, n, coeffs)


def expression_polynomial(h: Expression, space: CategorySpace) -> MonomialForm | None:
    poly = h.to_polynomial(space.categories)
    return None if poly is None else MonomialForm.from_dict(space, poly)

