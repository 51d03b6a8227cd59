"""Linear previsions, credal lower previsions and natural extension.

A credal lower prevision is stored by the vertices of its credal set; its
value on a gamble is the minimum expectation over those vertices. Natural
extension goes the other way: from lower bounds on a few gambles to the
least committal lower prevision, one exact LP per gamble.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import DomainMismatchError, SureLossError, ValidationError
from .gambles import Domain, Gamble, as_fraction, check_same_domain
from .lp import minimise_over_credal_polytope


@dataclass(frozen=True)
class LinearPrevision:
    """Expectation with respect to a probability mass function on a finite domain."""

    domain: Domain
    mass: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        mass = tuple(as_fraction(v) for v in self.mass)
        if len(mass) != len(self.domain):
            raise ValidationError(f"mass function needs {len(self.domain)} entries, got {len(mass)}")
        negative = [p for p, v in zip(self.domain.points, mass) if v < 0]
        if negative:
            raise ValidationError(f"negative mass at {negative[0]!r}")
        total = sum(mass, Fraction(0))
        if total != 1:
            raise ValidationError(f"masses sum to {total}, expected 1")
        object.__setattr__(self, "mass", mass)

    @classmethod
    def from_mapping(cls, domain: Domain, table: Mapping[Hashable, object]) -> "LinearPrevision":
        values = [Fraction(0)] * len(domain)
        for point, v in table.items():
            values[domain.position(point)] += as_fraction(v)
        return cls(domain, tuple(values))

    @classmethod
    def point_mass(cls, domain: Domain, point: Hashable) -> "LinearPrevision":
        values = [Fraction(0)] * len(domain)
        values[domain.position(point)] = Fraction(1)
        return cls(domain, tuple(values))

    @classmethod
    def uniform(cls, domain: Domain, points: Iterable[Hashable] | None = None) -> "LinearPrevision":
        pts = list(domain.points if points is None else points)
        w = Fraction(1, len(pts))
        return cls.from_mapping(domain, {p: w for p in pts})

    def __call__(self, f: Gamble) -> Fraction:
        return evaluate_linear(self, f)

    def support(self) -> list[Hashable]:
        return [p for p, v in zip(self.domain.points, self.mass) if v]

    def __getitem__(self, point: Hashable) -> Fraction:
        return self.mass[self.domain.position(point)]


def evaluate_linear(P: LinearPrevision, f: Gamble) -> Fraction:
    check_same_domain(P.domain, f.domain)
    return sum((p * v for p, v in zip(P.mass, f.values) if p), Fraction(0))


@dataclass(frozen=True)
class CredalLowerPrevision:
    """Lower envelope of a finite, non-empty list of linear previsions."""

    vertices: tuple[LinearPrevision, ...]

    def __post_init__(self) -> None:
        vertices = tuple(self.vertices)
        if not vertices:
            raise ValidationError("a credal lower prevision needs at least one vertex")
        dom = vertices[0].domain
        for v in vertices[1:]:
            if v.domain != dom:
                raise DomainMismatchError(f"vertices live on different domains: {dom} vs {v.domain}")
        object.__setattr__(self, "vertices", vertices)

    @property
    def domain(self) -> Domain:
        return self.vertices[0].domain

    def lower(self, f: Gamble) -> Fraction:
        return evaluate_lower(self, f)

    def upper(self, f: Gamble) -> Fraction:
        return evaluate_upper(self, f)

    def envelope_equal(self, other: "CredalLowerPrevision", gambles: Iterable[Gamble]) -> bool:
        return all(self.lower(f) == other.lower(f) for f in gambles)


def evaluate_lower(L: CredalLowerPrevision, f: Gamble) -> Fraction:
    return min(evaluate_linear(P, f) for P in L.vertices)


def evaluate_upper(L: CredalLowerPrevision, f: Gamble) -> Fraction:
    return -evaluate_lower(L, -f)


@dataclass(frozen=True)
class AssessmentSet:
    """Lower bounds ``P(f_i) >= mu_i`` on a common domain."""

    domain: Domain
    items: tuple[tuple[Gamble, Fraction], ...] = ()

    def __post_init__(self) -> None:
        items = tuple((f, as_fraction(mu)) for f, mu in self.items)
        for f, _ in items:
            check_same_domain(self.domain, f.domain)
        object.__setattr__(self, "items", items)

    def __len__(self) -> int:
        return len(self.items)


def _solve(A: AssessmentSet, objective: Sequence[Fraction]):
    return minimise_over_credal_polytope(objective, [(f.values, mu) for f, mu in A.items])


def natural_extension(A: AssessmentSet, f: Gamble) -> Fraction:
    """Least committal lower prevision of ``f`` implied by the assessments."""
    check_same_domain(A.domain, f.domain)
    res = _solve(A, f.values)
    if not res.feasible:
        raise SureLossError("the assessments incur sure loss: no mass function satisfies all bounds")
    return res.value


def check_avoiding_sure_loss(A: AssessmentSet) -> bool:
    return _solve(A, [Fraction(0)] * len(A.domain)).feasible


@dataclass(frozen=True)
class Correction:
    index: int
    stated: Fraction
    corrected: Fraction


@dataclass(frozen=True)
class CoherenceReport:
    coherent: bool
    avoids_sure_loss: bool
    corrections: tuple[Correction, ...] = ()


def check_coherence(A: AssessmentSet) -> CoherenceReport:
    """Coherent iff sure loss is avoided and natural extension reproduces every bound."""
    if not check_avoiding_sure_loss(A):
        return CoherenceReport(False, False)
    corrections = []
    for i, (f, mu) in enumerate(A.items):
        value = natural_extension(A, f)
        if value != mu:
            corrections.append(Correction(i, mu, value))
    return CoherenceReport(not corrections, True, tuple(corrections))


@dataclass
class AuditReport:
    checks: list[tuple[str, bool]] = field(default_factory=list)

    def add(self, name: str, passed: bool) -> None:
        self.checks.append((name, bool(passed)))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def failures(self) -> list[str]:
        return [name for name, ok in self.checks if not ok]


def axiom_audit(
    L: CredalLowerPrevision, pairs: Iterable[tuple[Gamble, Gamble, object]]
) -> AuditReport:
    """Check the coherence axioms and their consequences on concrete triples ``(f, g, lam)``."""
    report = AuditReport()
    for k, (f, g, lam) in enumerate(pairs):
        lam = as_fraction(lam)
        if lam < 0:
            raise ValidationError(f"homogeneity factor must be non-negative, got {lam}")
        lf, lg = L.lower(f), L.lower(g)
        report.add(f"[{k}] accepting sure gains", lf >= f.min())
        report.add(f"[{k}] homogeneity", L.lower(f * lam) == lam * lf)
        report.add(f"[{k}] superadditivity", L.lower(f + g) >= lf + lg)
        if f.dominated_by(g):
            report.add(f"[{k}] monotonicity", lf <= lg)
        report.add(f"[{k}] bounds", f.min() <= lf <= L.upper(f) <= f.max())
    return report
