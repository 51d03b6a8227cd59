"""Rational gambles on finite domains.

Two kinds of domain occur: the tuple space ``X^N`` and the count space of
count vectors with total ``N``. A gamble stores a dense table of exact
rationals in the domain's canonical enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .combinatorics import (
    CategorySpace,
    check_capacity,
    enumerate_count_vectors,
    enumerate_tuples,
)
from .errors import DomainMismatchError, ValidationError

TUPLE = "tuple"
COUNT = "count"

Rational = Fraction | int


def as_fraction(value: object) -> Fraction:
    """Exact conversion; floats are refused because they are rarely what was meant."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"not a rational number: {value!r}") from None
    raise ValidationError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class Domain:
    space: CategorySpace
    N: int
    kind: str = TUPLE

    def __post_init__(self) -> None:
        if self.kind not in (TUPLE, COUNT):
            raise ValidationError(f"unknown domain kind {self.kind!r}")
        if self.N < 0:
            raise ValidationError(f"domain size N must be non-negative, got {self.N}")

    @classmethod
    def tuples(cls, space: CategorySpace, N: int) -> "Domain":
        return cls(space, N, TUPLE)

    @classmethod
    def counts(cls, space: CategorySpace, N: int) -> "Domain":
        return cls(space, N, COUNT)

    @property
    def points(self) -> tuple[Hashable, ...]:
        return _points(self.space, self.N, self.kind)

    @property
    def _positions(self) -> dict[Hashable, int]:
        return _positions(self.space, self.N, self.kind)

    def __len__(self) -> int:
        return len(self.points)

    def position(self, point: Hashable) -> int:
        if self.kind == TUPLE and not isinstance(point, tuple):
            point = tuple(point)
        try:
            return self._positions[point]
        except KeyError:
            if self.kind == TUPLE:
                self.space.check_tuple(point)
            raise ValidationError(f"{point!r} is not a point of {self}") from None

    def __str__(self) -> str:
        sym = "X" if self.kind == TUPLE else "counts"
        return f"{sym}^{self.N} over {{{', '.join(self.space)}}}"


# equal domains share one enumeration; the cap is checked before anything is cached
@lru_cache(maxsize=256)
def _cached_points(space: CategorySpace, N: int, kind: str) -> tuple[Hashable, ...]:
    if kind == TUPLE:
        return tuple(enumerate_tuples(space, N))
    return tuple(enumerate_count_vectors(space, N))


def _points(space: CategorySpace, N: int, kind: str) -> tuple[Hashable, ...]:
    if kind == TUPLE:
        check_capacity(len(space) ** N, f"X^{N} over {len(space)} categories")
    return _cached_points(space, N, kind)


@lru_cache(maxsize=256)
def _positions(space: CategorySpace, N: int, kind: str) -> dict[Hashable, int]:
    return {p: i for i, p in enumerate(_points(space, N, kind))}


def check_same_domain(a: Domain, b: Domain) -> None:
    if a != b:
        raise DomainMismatchError(f"domains differ: {a} vs {b}")


@dataclass(frozen=True)
class Gamble:
    """A total map from domain points to rationals, stored densely."""

    domain: Domain
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        values = tuple(as_fraction(v) for v in self.values)
        if len(values) != len(self.domain):
            raise ValidationError(
                f"gamble on {self.domain} needs {len(self.domain)} values, got {len(values)}"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, domain: Domain, fn: Callable[[Hashable], object]) -> "Gamble":
        return cls(domain, tuple(fn(p) for p in domain.points))

    @classmethod
    def from_mapping(cls, domain: Domain, table: Mapping[Hashable, object], default: object = 0) -> "Gamble":
        values = [as_fraction(default)] * len(domain)
        for point, v in table.items():
            values[domain.position(point)] = as_fraction(v)
        return cls(domain, tuple(values))

    @classmethod
    def constant(cls, domain: Domain, c: object) -> "Gamble":
        return cls(domain, (as_fraction(c),) * len(domain))

    @classmethod
    def indicator(cls, domain: Domain, points: Iterable[Hashable]) -> "Gamble":
        values = [Fraction(0)] * len(domain)
        for p in points:
            values[domain.position(p)] = Fraction(1)
        return cls(domain, tuple(values))

    def __call__(self, point: Hashable) -> Fraction:
        return self.values[self.domain.position(point)]

    def items(self) -> Iterable[tuple[Hashable, Fraction]]:
        return zip(self.domain.points, self.values)

    def min(self) -> Fraction:
        return min(self.values)

    def max(self) -> Fraction:
        return max(self.values)

    def _binary(self, other: "Gamble", op: Callable[[Fraction, Fraction], Fraction]) -> "Gamble":
        check_same_domain(self.domain, other.domain)
        return Gamble(self.domain, tuple(op(a, b) for a, b in zip(self.values, other.values)))

    def __add__(self, other: "Gamble | Rational") -> "Gamble":
        if isinstance(other, Gamble):
            return self._binary(other, lambda a, b: a + b)
        c = as_fraction(other)
        return Gamble(self.domain, tuple(v + c for v in self.values))

    __radd__ = __add__

    def __sub__(self, other: "Gamble | Rational") -> "Gamble":
        if isinstance(other, Gamble):
            return self._binary(other, lambda a, b: a - b)
        return self + (-as_fraction(other))

    def __neg__(self) -> "Gamble":
        return Gamble(self.domain, tuple(-v for v in self.values))

    def __mul__(self, scalar: Rational) -> "Gamble":
        if isinstance(scalar, Gamble):
            return self._binary(scalar, lambda a, b: a * b)
        c = as_fraction(scalar)
        return Gamble(self.domain, tuple(v * c for v in self.values))

    __rmul__ = __mul__

    def dominated_by(self, other: "Gamble") -> bool:
        """Pointwise ``self <= other``."""
        check_same_domain(self.domain, other.domain)
        return all(a <= b for a, b in zip(self.values, other.values))


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{1, ..., N}`` given by its list of images."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValidationError(f"{images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @property
    def N(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, N: int) -> "Permutation":
        return cls(tuple(range(1, N + 1)))

    @classmethod
    def transposition(cls, N: int, i: int, j: int) -> "Permutation":
        images = list(range(1, N + 1))
        images[i - 1], images[j - 1] = images[j - 1], images[i - 1]
        return cls(tuple(images))

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def act(self, z: Sequence[str]) -> tuple[str, ...]:
        """The lifted map on tuples: ``(z_{pi(1)}, ..., z_{pi(N)})``."""
        if len(z) != self.N:
            raise DomainMismatchError(f"tuple of length {len(z)} for a permutation of {self.N}")
        return tuple(z[i - 1] for i in self.images)

    def then(self, other: "Permutation") -> "Permutation":
        """Permutation whose lifted map is ``self.act`` composed after ``other.act``.

        ``sigma.then(pi).act(z) == sigma.act(pi.act(z))``, so that
        ``permute(permute(f, sigma), pi) == permute(f, sigma.then(pi))``.
        """
        if other.N != self.N:
            raise DomainMismatchError("permutations of different sizes")
        return Permutation(tuple(other.images[s - 1] for s in self.images))


def compose(sigma: Permutation, pi: Permutation) -> Permutation:
    return sigma.then(pi)


def permute(f: Gamble, pi: Permutation) -> Gamble:
    """The permuted gamble ``f o pi``."""
    if f.domain.kind != "tuple" or f.domain.N != pi.N:
        raise DomainMismatchError(f"cannot permute a gamble on {f.domain} by a permutation of {pi.N}")
    return Gamble.from_function(f.domain, lambda z: f(pi.act(z)))


def cylindrical_extension(f: Gamble, k: int) -> Gamble:
    """Extend ``f`` on ``X^n`` to ``X^(n+k)`` by ignoring the trailing ``k`` coordinates."""
    if f.domain.kind != "tuple":
        raise DomainMismatchError("cylindrical extension needs a gamble on a tuple space")
    if k < 0:
        raise ValidationError(f"k must be non-negative, got {k}")
    if k == 0:
        return f
    n = f.domain.N
    target = Domain.tuples(f.domain.space, n + k)
    return Gamble.from_function(target, lambda z: f(z[:n]))


def lower_projection(f: Gamble, n: int) -> Gamble:
    """Minimum of ``f`` over all completions of the first ``n`` coordinates."""
    if f.domain.kind != "tuple":
        raise DomainMismatchError("lower projection needs a gamble on a tuple space")
    m = f.domain.N
    if not 1 <= n <= m:
        raise ValidationError(f"projection size must lie in 1..{m}, got {n}")
    best: dict[tuple[str, ...], Fraction] = {}
    for z, v in f.items():
        key = z[:n]
        if key not in best or v < best[key]:
            best[key] = v
    target = Domain.tuples(f.domain.space, n)
    return Gamble.from_function(target, lambda x: best[x])
