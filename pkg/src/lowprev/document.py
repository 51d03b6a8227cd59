"""JSON model documents: loading, validation and canonical serialisation.

Layout (every key except ``space`` is optional)::

    {
      "version": "1",
      "space": ["a", "b"],
      "credal": {"kind": "tuple", "N": 2, "vertices": [{"a,b": "1/2", "b,a": "1/2"}]},
      "assessments": {"kind": "tuple", "N": 1,
                      "items": [{"gamble": "Ia", "lower": "3/10"},
                                {"values": {"b": 1}, "lower": "1/2"}]},
      "family": {"members": [[{"a=1": 1}], [{"a=1,b=1": 1}]]},
      "simplex_lp": {"vertices": [[{"theta": {"a": "1/3", "b": "2/3"}, "weight": 1}]]},
      "gambles": {"Ia": {"kind": "tuple", "N": 1, "values": {"a": 1}}},
      "polys": {"p": {"bernstein": {"degree": 2, "coeffs": {"a=1,b=1": "1/2"}}},
                "q": {"monomials": [{"exponents": {"a": 1, "b": 1}, "coeff": 1}]}},
      "exprs": {"h": "sq(theta.a)"}
    }

Points of a tuple space are written ``"a,b,a"``; count vectors are written
``"a=2,b=1"`` with zero counts omitted. Missing points carry mass or value 0.
Rationals are strings ``"p/q"`` or integers; JSON decimals are read exactly.
Categories are sorted lexicographically on load so that serialising and
reloading reproduces the same document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Hashable

from .bernstein import BernsteinPoly, MonomialForm, SimplexPoint
from .combinatorics import CategorySpace, CountVector
from .errors import LowPrevError, ValidationError
from .expr import Expression
from .gambles import COUNT, TUPLE, Domain, Gamble, as_fraction
from .previsions import AssessmentSet, CredalLowerPrevision, LinearPrevision
from .representation import CountFamily, SimplexDistribution, SimplexLowerPrevision

VERSION = "1"
_FORBIDDEN = set(",= \t\n\"")


class ModelError(ValidationError):
    """A document that does not parse or violates an invariant."""


def fmt(q: Fraction | int) -> str:
    """Exact text form: ``"p/q"`` in lowest terms, integers without denominator."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass
class ModelDocument:
    space: CategorySpace
    version: str = VERSION
    credal: CredalLowerPrevision | None = None
    assessments: AssessmentSet | None = None
    family: CountFamily | None = None
    simplex_lp: SimplexLowerPrevision | None = None
    gambles: dict[str, Gamble] = field(default_factory=dict)
    polys: dict[str, BernsteinPoly | MonomialForm] = field(default_factory=dict)
    exprs: dict[str, Expression] = field(default_factory=dict)


# -- point keys ---------------------------------------------------------------


def point_key(domain: Domain, point: Hashable) -> str:
    if domain.kind == TUPLE:
        return ",".join(point)
    return ",".join(f"{x}={c}" for x, c in zip(point.space.categories, point.counts) if c)


def parse_point(domain: Domain, key: str) -> Hashable:
    key = key.strip()
    if domain.kind == TUPLE:
        z = tuple(s.strip() for s in key.split(",")) if key else ()
        domain.space.check_tuple(z)
        if len(z) != domain.N:
            raise ValidationError(f"tuple {key!r} has length {len(z)}, expected {domain.N}")
        return z
    return parse_counts(domain.space, key, domain.N)


def parse_counts(space: CategorySpace, key: str, N: int | None = None) -> CountVector:
    counts: dict[str, int] = {}
    for part in filter(None, (s.strip() for s in key.split(","))):
        label, sep, value = part.partition("=")
        if not sep:
            raise ValidationError(f"count entry {part!r} should look like 'label=count'")
        try:
            counts[label.strip()] = int(value)
        except ValueError:
            raise ValidationError(f"count {value!r} is not an integer") from None
    m = CountVector.from_mapping(space, counts)
    if N is not None and m.N != N:
        raise ValidationError(f"count vector {key!r} totals {m.N}, expected {N}")
    return m


# -- loading -----------------------------------------------------------------


class _Loader:
    def __init__(self, raw: dict[str, Any]):
        self.raw = raw

    def fail(self, path: str, msg: str) -> ModelError:
        return ModelError(f"{path}: {msg}")

    def get(self, obj: Any, key: str, path: str, kind: type | tuple = object, default: Any = ...) -> Any:
        if not isinstance(obj, dict):
            raise self.fail(path, "expected an object")
        if key not in obj:
            if default is ...:
                raise self.fail(path, f"missing key {key!r}")
            return default
        value = obj[key]
        if kind is not object and not isinstance(value, kind):
            raise self.fail(f"{path}.{key}", f"expected {getattr(kind, '__name__', kind)}")
        return value

    def rational(self, value: Any, path: str) -> Fraction:
        try:
            return as_fraction(value)
        except ValidationError as exc:
            raise self.fail(path, str(exc)) from None

    def space(self) -> CategorySpace:
        labels = self.get(self.raw, "space", "document", list)
        for i, label in enumerate(labels):
            if not isinstance(label, str) or not label or _FORBIDDEN & set(label):
                raise self.fail(f"space[{i}]", f"invalid category label {label!r}")
        try:
            return CategorySpace(sorted(labels))
        except ValidationError as exc:
            raise self.fail("space", str(exc)) from None

    def domain(self, obj: dict, path: str, space: CategorySpace) -> Domain:
        kind = self.get(obj, "kind", path, str, TUPLE)
        N = self.get(obj, "N", path, int)
        if kind not in (TUPLE, COUNT):
            raise self.fail(f"{path}.kind", f"must be 'tuple' or 'count', got {kind!r}")
        if N < 0:
            raise self.fail(f"{path}.N", "must be non-negative")
        return Domain(space, N, kind)

    def table(self, domain: Domain, obj: Any, path: str) -> list[Fraction]:
        if not isinstance(obj, dict):
            raise self.fail(path, "expected an object mapping points to rationals")
        values = [Fraction(0)] * len(domain)
        seen: dict[int, str] = {}
        for key, v in obj.items():
            try:
                i = domain.position(parse_point(domain, key))
            except LowPrevError as exc:
                raise type(exc)(f"{path}[{key!r}]: {exc}") from None
            if i in seen:
                raise self.fail(path, f"point {key!r} repeats {seen[i]!r}")
            seen[i] = key
            values[i] = self.rational(v, f"{path}[{key!r}]")
        return values

    def vertex(self, domain: Domain, obj: Any, path: str) -> LinearPrevision:
        mass = self.table(domain, obj, path)
        total = sum(mass, Fraction(0))
        if total != 1:
            raise self.fail(path, f"vertex masses sum to {fmt(total)}, expected 1")
        try:
            return LinearPrevision(domain, tuple(mass))
        except ValidationError as exc:
            raise self.fail(path, str(exc)) from None

    def credal(self, domain: Domain, vertices: Any, path: str) -> CredalLowerPrevision:
        if not isinstance(vertices, list) or not vertices:
            raise self.fail(path, "expected a non-empty list of vertices")
        return CredalLowerPrevision(
            tuple(self.vertex(domain, v, f"{path}[{i}]") for i, v in enumerate(vertices))
        )

    def gamble(self, obj: Any, path: str, space: CategorySpace) -> Gamble:
        domain = self.domain(obj, path, space)
        default = self.rational(self.get(obj, "default", path, default=0), f"{path}.default")
        values = self.get(obj, "values", path, dict)
        table = self.table(domain, values, f"{path}.values")
        given = {domain.position(parse_point(domain, k)) for k in values}
        return Gamble(domain, tuple(v if i in given else default for i, v in enumerate(table)))

    def simplex_point(self, obj: Any, path: str, space: CategorySpace) -> SimplexPoint:
        if not isinstance(obj, dict):
            raise self.fail(path, "expected an object mapping categories to rationals")
        theta = {k: self.rational(v, f"{path}.{k}") for k, v in obj.items()}
        try:
            return SimplexPoint.from_mapping(space, theta)
        except LowPrevError as exc:
            raise type(exc)(f"{path}: {exc}") from None

    def poly(self, obj: Any, path: str, space: CategorySpace) -> BernsteinPoly | MonomialForm:
        if not isinstance(obj, dict) or len(obj) != 1 or next(iter(obj)) not in ("bernstein", "monomials"):
            raise self.fail(path, "expected exactly one of 'bernstein' or 'monomials'")
        if "bernstein" in obj:
            body = obj["bernstein"]
            p = f"{path}.bernstein"
            degree = self.get(body, "degree", p, int)
            if degree < 0:
                raise self.fail(f"{p}.degree", "must be non-negative")
            coeffs = self.table(Domain.counts(space, degree), self.get(body, "coeffs", p, dict), f"{p}.coeffs")
            return BernsteinPoly(space, degree, tuple(coeffs))
        terms = []
        for i, term in enumerate(obj["monomials"] if isinstance(obj["monomials"], list) else [None]):
            p = f"{path}.monomials[{i}]"
            exps = self.get(term, "exponents", p, dict)
            alpha = [0] * len(space)
            for label, e in exps.items():
                if not isinstance(e, int) or e < 0:
                    raise self.fail(f"{p}.exponents.{label}", "exponent must be a non-negative integer")
                try:
                    alpha[space.index(label)] = e
                except LowPrevError as exc:
                    raise type(exc)(f"{p}.exponents: {exc}") from None
            terms.append((tuple(alpha), self.rational(self.get(term, "coeff", p), f"{p}.coeff")))
        return MonomialForm(space, tuple(terms))

    def load(self) -> ModelDocument:
        raw = self.raw
        if not isinstance(raw, dict):
            raise ModelError("document: top level must be a JSON object")
        known = {"version", "space", "credal", "assessments", "family", "simplex_lp", "gambles", "polys", "exprs"}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ModelError(f"document: unknown top-level keys {unknown}")
        version = str(raw.get("version", VERSION))
        if version != VERSION:
            raise ModelError(f"version: unsupported document version {version!r}")
        space = self.space()
        doc = ModelDocument(space=space, version=version)

        for name, g in self.get(raw, "gambles", "document", dict, {}).items():
            doc.gambles[name] = self.gamble(g, f"gambles.{name}", space)

        if "credal" in raw:
            c = raw["credal"]
            domain = self.domain(c, "credal", space)
            doc.credal = self.credal(domain, self.get(c, "vertices", "credal"), "credal.vertices")

        if "assessments" in raw:
            a = raw["assessments"]
            domain = self.domain(a, "assessments", space)
            items = []
            for i, item in enumerate(self.get(a, "items", "assessments", list)):
                p = f"assessments.items[{i}]"
                lower = self.rational(self.get(item, "lower", p), f"{p}.lower")
                if "gamble" in item:
                    name = item["gamble"]
                    if name not in doc.gambles:
                        raise self.fail(f"{p}.gamble", f"undefined gamble {name!r}")
                    f = doc.gambles[name]
                    if f.domain != domain:
                        raise self.fail(f"{p}.gamble", f"gamble {name!r} lives on {f.domain}, expected {domain}")
                else:
                    f = Gamble(domain, tuple(self.table(domain, self.get(item, "values", p, dict), f"{p}.values")))
                items.append((f, lower))
            doc.assessments = AssessmentSet(domain, tuple(items))

        if "family" in raw:
            members = self.get(raw["family"], "members", "family", list)
            if not members:
                raise self.fail("family.members", "a family needs horizon at least 1")
            doc.family = CountFamily(
                tuple(
                    self.credal(Domain.counts(space, n), vs, f"family.members[{n - 1}]")
                    for n, vs in enumerate(members, start=1)
                )
            )

        if "simplex_lp" in raw:
            vertices = self.get(raw["simplex_lp"], "vertices", "simplex_lp", list)
            if not vertices:
                raise self.fail("simplex_lp.vertices", "expected at least one vertex")
            dists = []
            for i, vertex in enumerate(vertices):
                p = f"simplex_lp.vertices[{i}]"
                if not isinstance(vertex, list) or not vertex:
                    raise self.fail(p, "expected a non-empty list of weighted support points")
                support = []
                for j, sp in enumerate(vertex):
                    theta = self.simplex_point(self.get(sp, "theta", f"{p}[{j}]"), f"{p}[{j}].theta", space)
                    support.append((theta, self.rational(self.get(sp, "weight", f"{p}[{j}]"), f"{p}[{j}].weight")))
                try:
                    dists.append(SimplexDistribution(tuple(support)))
                except ValidationError as exc:
                    raise self.fail(p, str(exc)) from None
            doc.simplex_lp = SimplexLowerPrevision(tuple(dists))

        for name, body in self.get(raw, "polys", "document", dict, {}).items():
            doc.polys[name] = self.poly(body, f"polys.{name}", space)

        for name, text in self.get(raw, "exprs", "document", dict, {}).items():
            if not isinstance(text, str):
                raise self.fail(f"exprs.{name}", "expected expression text")
            try:
                e = Expression.parse(text)
                e.check_labels(space.categories)
            except ValidationError as exc:
                raise self.fail(f"exprs.{name}", str(exc)) from None
            doc.exprs[name] = e
        return doc


def loads(text: str) -> ModelDocument:
    try:
        raw = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ModelError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return _Loader(raw).load()


def load(path: str | Path) -> ModelDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


# -- serialisation -----------------------------------------------------------


def _table(domain: Domain, values) -> dict[str, str]:
    return {point_key(domain, p): fmt(v) for p, v in zip(domain.points, values) if v}


def _domain(domain: Domain) -> dict[str, Any]:
    return {"kind": domain.kind, "N": domain.N}


def to_dict(doc: ModelDocument) -> dict[str, Any]:
    out: dict[str, Any] = {"version": doc.version, "space": sorted(doc.space.categories)}
    if doc.credal is not None:
        out["credal"] = {
            **_domain(doc.credal.domain),
            "vertices": [_table(v.domain, v.mass) for v in doc.credal.vertices],
        }
    if doc.assessments is not None:
        A = doc.assessments
        out["assessments"] = {
            **_domain(A.domain),
            "items": [{"values": _table(f.domain, f.values), "lower": fmt(mu)} for f, mu in A.items],
        }
    if doc.family is not None:
        out["family"] = {
            "members": [[_table(v.domain, v.mass) for v in Q.vertices] for Q in doc.family.members]
        }
    if doc.simplex_lp is not None:
        out["simplex_lp"] = {
            "vertices": [
                [
                    {"theta": {x: fmt(t) for x, t in theta.as_dict().items()}, "weight": fmt(w)}
                    for theta, w in v.support
                ]
                for v in doc.simplex_lp.vertices
            ]
        }
    if doc.gambles:
        out["gambles"] = {
            name: {**_domain(g.domain), "values": _table(g.domain, g.values)} for name, g in doc.gambles.items()
        }
    if doc.polys:
        polys = {}
        for name, p in doc.polys.items():
            if isinstance(p, BernsteinPoly):
                polys[name] = {"bernstein": {"degree": p.degree, "coeffs": _table(p.as_gamble().domain, p.coeffs)}}
            else:
                polys[name] = {
                    "monomials": [
                        {"exponents": {x: e for x, e in zip(p.space.categories, alpha) if e}, "coeff": fmt(c)}
                        for alpha, c in p.terms
                    ]
                }
        out["polys"] = polys
    if doc.exprs:
        out["exprs"] = {name: e.source for name, e in doc.exprs.items()}
    return out


def dumps(doc: ModelDocument) -> str:
    return json.dumps(to_dict(doc), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
