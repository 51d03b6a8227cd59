"""Count vectors, invariant atoms and multinomial coefficients.

A tuple ``z`` in ``X^N`` is represented as a plain Python tuple of category
labels. Its count vector records how often each label occurs; the set of all
tuples sharing a count vector is the permutation invariant atom of that
vector.
"""

from __future__ import annotations

import itertools
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import CapacityError, DomainMismatchError, InvalidCategoryError, ValidationError

DEFAULT_CAP = 10**6

_cap: ContextVar[int] = ContextVar("enumeration_cap", default=DEFAULT_CAP)


def get_cap() -> int:
    return _cap.get()


@contextmanager
def enumeration_cap(cap: int) -> Iterator[int]:
    """Temporarily override the enumeration cap for the current context."""
    if cap < 1:
        raise ValidationError(f"enumeration cap must be positive, got {cap}")
    token = _cap.set(cap)
    try:
        yield cap
    finally:
        _cap.reset(token)


def check_capacity(size: int, what: str) -> None:
    cap = _cap.get()
    if size > cap:
        raise CapacityError(f"{what} has {size} elements, exceeding the enumeration cap {cap}")


@dataclass(frozen=True)
class CategorySpace:
    """Finite, ordered set of category labels.

    The order given at construction is the canonical order used for count
    vectors, tuple enumeration and dense value tables.
    """

    categories: tuple[str, ...]

    def __init__(self, categories: Sequence[str]):
        cats = tuple(str(c) for c in categories)
        if not cats:
            raise ValidationError("a category space needs at least one category")
        if len(set(cats)) != len(cats):
            raise ValidationError(f"duplicate category labels in {list(cats)}")
        object.__setattr__(self, "categories", cats)
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(cats)})

    def __len__(self) -> int:
        return len(self.categories)

    def __iter__(self) -> Iterator[str]:
        return iter(self.categories)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InvalidCategoryError(
                f"{label!r} is not a category of {list(self.categories)}"
            ) from None

    def sorted(self) -> "CategorySpace":
        return CategorySpace(sorted(self.categories))

    def check_tuple(self, z: Sequence[str]) -> tuple[str, ...]:
        for label in z:
            self.index(label)
        return tuple(z)


@dataclass(frozen=True, order=False)
class CountVector:
    """Occurrence counts ``m`` over a category space, aligned with its order."""

    space: CategorySpace
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        if len(counts) != len(self.space):
            raise ValidationError(
                f"count vector {counts} has {len(counts)} entries, space has {len(self.space)}"
            )
        if any(c < 0 for c in counts):
            raise ValidationError(f"count vector {counts} has a negative entry")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_mapping(cls, space: CategorySpace, counts: dict[str, int]) -> "CountVector":
        values = [0] * len(space)
        for label, c in counts.items():
            values[space.index(label)] = int(c)
        return cls(space, tuple(values))

    @property
    def N(self) -> int:
        return sum(self.counts)

    def __getitem__(self, label: str) -> int:
        return self.counts[self.space.index(label)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.space.categories, self.counts))

    def __le__(self, other: "CountVector") -> bool:
        return all(a <= b for a, b in zip(self.counts, other.counts))

    def __add__(self, other: "CountVector") -> "CountVector":
        _same_space(self.space, other.space)
        return CountVector(self.space, tuple(a + b for a, b in zip(self.counts, other.counts)))

    def __sub__(self, other: "CountVector") -> "CountVector":
        """Componentwise difference; only defined when ``other <= self``."""
        _same_space(self.space, other.space)
        if not other <= self:
            raise ValidationError(f"{other.counts} is not below {self.counts}")
        return CountVector(self.space, tuple(a - b for a, b in zip(self.counts, other.counts)))

    def __str__(self) -> str:
        return ",".join(f"{x}={c}" for x, c in zip(self.space.categories, self.counts))


def _same_space(a: CategorySpace, b: CategorySpace) -> None:
    if a != b:
        raise DomainMismatchError(f"category spaces differ: {list(a)} vs {list(b)}")


def count_vector(space: CategorySpace, z: Sequence[str]) -> CountVector:
    counts = [0] * len(space)
    for label in z:
        counts[space.index(label)] += 1
    return CountVector(space, tuple(counts))


@lru_cache(maxsize=None)
def _compositions(k: int, N: int) -> tuple[tuple[int, ...], ...]:
    if k == 1:
        return ((N,),)
    out = []
    for first in range(N, -1, -1):
        for rest in _compositions(k - 1, N - first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_count_vectors(space: CategorySpace, N: int) -> list[CountVector]:
    """All count vectors with total ``N``, in reverse-lexicographic order.

    For two categories and ``N = 2`` this is ``(2,0), (1,1), (0,2)``.
    """
    if N < 0:
        raise ValidationError(f"N must be non-negative, got {N}")
    return [CountVector(space, c) for c in _compositions(len(space), N)]


def number_of_count_vectors(k: int, N: int) -> int:
    return binomial(N + k - 1, k - 1)


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    out = 1
    for i in range(1, k + 1):
        out = out * (n - k + i) // i
    return out


@lru_cache(maxsize=4096)
def _multinomial(counts: tuple[int, ...]) -> int:
    # product of binomials keeps every intermediate an exact integer
    out, total = 1, 0
    for c in counts:
        total += c
        out *= binomial(total, c)
    return out


def nu(m: CountVector) -> int:
    """Number of tuples in the atom of ``m``: ``N! / prod(m_x!)``."""
    return _multinomial(m.counts)


def atom(m: CountVector) -> list[tuple[str, ...]]:
    """All distinct tuples with count vector ``m``, in lexicographic category order."""
    size = nu(m)
    check_capacity(size, f"atom of {m}")
    labels = m.space.categories
    remaining = list(m.counts)
    N = m.N
    out: list[tuple[str, ...]] = []
    prefix: list[str] = []

    def rec(depth: int) -> None:
        if depth == N:
            out.append(tuple(prefix))
            return
        for i, c in enumerate(remaining):
            if c:
                remaining[i] -= 1
                prefix.append(labels[i])
                rec(depth + 1)
                prefix.pop()
                remaining[i] += 1

    rec(0)
    return out


def enumerate_tuples(space: CategorySpace, N: int) -> list[tuple[str, ...]]:
    """All of ``X^N`` in product order (first coordinate varies slowest)."""
    if N < 0:
        raise ValidationError(f"N must be non-negative, got {N}")
    check_capacity(len(space) ** N, f"X^{N} over {len(space)} categories")
    return list(itertools.product(space.categories, repeat=N))
