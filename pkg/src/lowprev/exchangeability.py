"""Finite exchangeability: sampling without replacement from an urn.

An exchangeable model on ``X^N`` is determined by its count distribution on
the count vectors with total ``N``. Given an urn composition ``m``, the
multiple hypergeometric prevision averages a gamble over the atom of ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import atom, count_vector, nu
from .errors import DomainMismatchError, ValidationError
from .gambles import COUNT, TUPLE, Domain, Gamble, Permutation
from .lp import extreme_points
from .previsions import CredalLowerPrevision, LinearPrevision


def _require(domain: Domain, kind: str) -> None:
    if domain.kind != kind:
        raise DomainMismatchError(f"expected a {kind} domain, got {domain}")


def muhy(f: Gamble, m) -> Fraction:
    """Expectation of ``f`` when drawing all balls of an urn with composition ``m``."""
    _require(f.domain, TUPLE)
    if m.space != f.domain.space or m.N != f.domain.N:
        raise DomainMismatchError(f"count vector {m} does not match {f.domain}")
    members = atom(m)
    return sum((f(z) for z in members), Fraction(0)) / len(members)


def muhy_gamble(f: Gamble) -> Gamble:
    """``m -> muhy(f, m)`` as a gamble on the count space."""
    _require(f.domain, TUPLE)
    counts = Domain.counts(f.domain.space, f.domain.N)
    sums = [Fraction(0)] * len(counts)
    for z, v in f.items():
        sums[counts.position(count_vector(f.domain.space, z))] += v
    return Gamble(counts, tuple(s / nu(m) for s, m in zip(sums, counts.points)))


def _push_to_counts(P: LinearPrevision) -> LinearPrevision:
    dom = P.domain
    counts = Domain.counts(dom.space, dom.N)
    q = [Fraction(0)] * len(counts)
    for z, p in zip(dom.points, P.mass):
        if p:
            q[counts.position(count_vector(dom.space, z))] += p
    return LinearPrevision(counts, tuple(q))


def count_distribution(PN: CredalLowerPrevision) -> CredalLowerPrevision:
    """Induced model on count vectors: ``Q(h) = P(h o T)``, vertex by vertex."""
    _require(PN.domain, TUPLE)
    return CredalLowerPrevision(tuple(_push_to_counts(P) for P in PN.vertices))


def _spread_over_atoms(q: LinearPrevision) -> LinearPrevision:
    dom = q.domain
    tuples = Domain.tuples(dom.space, dom.N)
    weights = {m: w / nu(m) for m, w in zip(dom.points, q.mass)}
    return LinearPrevision(tuples, tuple(weights[count_vector(dom.space, z)] for z in tuples.points))


def exchangeable_from_count(Q: CredalLowerPrevision) -> CredalLowerPrevision:
    """The exchangeable model on ``X^N`` whose count distribution is ``Q``.

    Each count vertex ``q`` becomes the mass function ``z -> q(T(z)) / nu(T(z))``.
    """
    _require(Q.domain, COUNT)
    return CredalLowerPrevision(tuple(_spread_over_atoms(q) for q in Q.vertices))


@dataclass(frozen=True)
class ExchangeabilityReport:
    exchangeable: bool
    witness: LinearPrevision | None = None
    transposition: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.exchangeable


def _violated_transposition(P: LinearPrevision) -> tuple[int, int] | None:
    N = P.domain.N
    for k in range(1, N):
        swap = Permutation.transposition(N, k, k + 1)
        for z, p in zip(P.domain.points, P.mass):
            if P[swap.act(z)] != p:
                return (k, k + 1)
    return None


def is_exchangeable(PN: CredalLowerPrevision) -> ExchangeabilityReport:
    """Exchangeable iff every extreme point of the credal set is permutation invariant.

    Redundant vertices are dropped first, so an asymmetric vertex lying inside
    the hull of the others cannot cause a false negative. Adjacent
    transpositions generate all permutations, so only those are checked.
    """
    _require(PN.domain, TUPLE)
    keep = extreme_points([P.mass for P in PN.vertices])
    for i in keep:
        P = PN.vertices[i]
        swap = _violated_transposition(P)
        if swap is not None:
            return ExchangeabilityReport(False, P, swap)
    return ExchangeabilityReport(True)


def marginal(PN: CredalLowerPrevision, n: int) -> CredalLowerPrevision:
    """Model for the first ``n`` variables, vertex by vertex."""
    _require(PN.domain, TUPLE)
    N = PN.domain.N
    if not 1 <= n <= N:
        raise ValidationError(f"marginal size must lie in 1..{N}, got {n}")
    target = Domain.tuples(PN.domain.space, n)
    vertices = []
    for P in PN.vertices:
        mass = [Fraction(0)] * len(target)
        for z, p in zip(P.domain.points, P.mass):
            if p:
                mass[target.position(z[:n])] += p
        vertices.append(LinearPrevision(target, tuple(mass)))
    return CredalLowerPrevision(tuple(vertices))
