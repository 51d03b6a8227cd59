"""Command-line interface.

Usage::

    lowprev <command> --model model.json [--gamble NAME] [--poly NAME] [--h EXPR]
                      [--n INT] [--ns RANGE] [--theta a=1/3,b=2/3] [--cap INT]
                      [--json | --csv]

Exit codes: 0 success, 2 model or validation error, 3 capacity exceeded,
64 usage error. Every number printed is an exact rational.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import bernstein as bz
from . import exchangeability as ex
from . import previsions as pv
from . import representation as rp
from .combinatorics import enumeration_cap
from .document import ModelDocument, ModelError, fmt, load, point_key
from .errors import CapacityError, LowPrevError, SureLossError
from .expr import Expression
from .gambles import Gamble
from .previsions import CredalLowerPrevision

EXIT_OK = 0
EXIT_MODEL = 2
EXIT_CAPACITY = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


@dataclass
class Output:
    """A command result: scalar fields plus an optional table."""

    fields: dict[str, Any] = field(default_factory=dict)
    header: list[str] | None = None
    rows: list[list[str]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def as_json(self) -> str:
        data = dict(self.fields)
        if self.header is not None:
            data["table"] = {"columns": self.header, "rows": self.rows}
        return json.dumps(data, indent=2, sort_keys=True) + "\n"

    def as_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if self.header is not None:
            writer.writerow(self.header)
            writer.writerows(self.rows)
        else:
            writer.writerow(["key", "value"])
            for k, v in self.fields.items():
                writer.writerow([k, _text(v)])
        return buf.getvalue()

    def as_text(self) -> str:
        lines = list(self.notes)
        for k, v in self.fields.items():
            if not isinstance(v, (dict, list)):
                lines.append(f"{k}: {_text(v)}")
        if self.header is not None:
            widths = [len(h) for h in self.header]
            for row in self.rows:
                widths = [max(w, len(c)) for w, c in zip(widths, row)]
            for row in [self.header] + self.rows:
                lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip())
        return "\n".join(lines) + "\n"


def _text(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    return str(v)


# -- argument helpers --------------------------------------------------------


def parse_ns(text: str) -> list[int]:
    """``"1..8"``, ``"2,4,8"`` or a mix such as ``"1..3,8"``."""
    out: list[int] = []
    for part in filter(None, (s.strip() for s in text.split(","))):
        lo, sep, hi = part.partition("..")
        try:
            if sep:
                a, b = int(lo), int(hi)
                if b < a:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(a, b + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"bad --ns entry {part!r}") from None
    if not out or any(n < 1 for n in out):
        raise UsageError(f"--ns must list positive integers, got {text!r}")
    return out


def _need(value: Any, what: str) -> Any:
    if value is None:
        raise ModelError(f"the model document has no {what} section")
    return value


def _flag(value: Any, flag: str) -> Any:
    if value is None:
        raise UsageError(f"this command requires {flag}")
    return value


def _gamble(doc: ModelDocument, args) -> tuple[str, Gamble]:
    name = _flag(args.gamble, "--gamble")
    if name not in doc.gambles:
        raise ModelError(f"gambles: undefined gamble {name!r}")
    return name, doc.gambles[name]


def _poly(doc: ModelDocument, args, degree: int | None = None) -> bz.BernsteinPoly:
    name = _flag(args.poly, "--poly")
    if name not in doc.polys:
        raise ModelError(f"polys: undefined polynomial {name!r}")
    p = doc.polys[name]
    if isinstance(p, bz.MonomialForm):
        return bz.from_monomials(p, p.total_degree if degree is None else max(degree, p.total_degree))
    return p


def _expr(doc: ModelDocument, args) -> Expression:
    text = _flag(args.h, "--h")
    if text in doc.exprs:
        return doc.exprs[text]
    try:
        e = Expression.parse(text)
        e.check_labels(doc.space.categories)
    except LowPrevError as exc:
        raise ModelError(f"--h: {exc}") from None
    return e


def _vertex_table(L: CredalLowerPrevision, label: str = "point") -> tuple[list[str], list[list[str]]]:
    dom = L.domain
    header = [label] + [f"v{i}" for i in range(len(L.vertices))]
    rows = []
    for i, p in enumerate(dom.points):
        masses = [v.mass[i] for v in L.vertices]
        if any(masses):
            rows.append([point_key(dom, p)] + [fmt(m) for m in masses])
    return header, rows


def _vertices_output(L: CredalLowerPrevision, **fields) -> Output:
    header, rows = _vertex_table(L)
    fields.update(domain=str(L.domain), vertices=len(L.vertices))
    return Output(fields, header, rows)


# -- commands ----------------------------------------------------------------


def cmd_eval_lower(doc, args) -> Output:
    name, f = _gamble(doc, args)
    return Output({"gamble": name, "lower": fmt(_need(doc.credal, "credal").lower(f))})


def cmd_eval_upper(doc, args) -> Output:
    name, f = _gamble(doc, args)
    return Output({"gamble": name, "upper": fmt(_need(doc.credal, "credal").upper(f))})


def cmd_natural_extension(doc, args) -> Output:
    name, f = _gamble(doc, args)
    value = pv.natural_extension(_need(doc.assessments, "assessments"), f)
    return Output({"gamble": name, "natural_extension": fmt(value)})


def cmd_check_coherence(doc, args) -> Output:
    report = pv.check_coherence(_need(doc.assessments, "assessments"))
    rows = [[str(c.index), fmt(c.stated), fmt(c.corrected)] for c in report.corrections]
    out = Output(
        {"coherent": report.coherent, "avoids_sure_loss": report.avoids_sure_loss},
        ["assessment", "stated", "corrected"] if rows else None,
        rows,
    )
    out.fields["corrections"] = [dict(zip(["assessment", "stated", "corrected"], r)) for r in rows]
    return out


def cmd_check_sure_loss(doc, args) -> Output:
    return Output({"avoids_sure_loss": pv.check_avoiding_sure_loss(_need(doc.assessments, "assessments"))})


def cmd_check_exchangeability(doc, args) -> Output:
    L = _need(doc.credal, "credal")
    report = ex.is_exchangeable(L)
    out = Output(notes=["true" if report.exchangeable else "false"])
    out.fields["exchangeable"] = report.exchangeable
    if not report.exchangeable:
        index = L.vertices.index(report.witness)
        i, j = report.transposition
        out.fields["witness_vertex"] = index
        out.fields["transposition"] = f"({i} {j})"
        out.fields["witness_mass"] = {
            point_key(L.domain, p): fmt(m) for p, m in zip(L.domain.points, report.witness.mass) if m
        }
        out.header = ["point", "mass"]
        out.rows = [[k, v] for k, v in out.fields["witness_mass"].items()]
    return out


def cmd_muhy(doc, args) -> Output:
    name, f = _gamble(doc, args)
    g = ex.muhy_gamble(f)
    rows = [[point_key(g.domain, m), fmt(v)] for m, v in g.items()]
    return Output({"gamble": name}, ["counts", "muhy"], rows)


def cmd_count_dist(doc, args) -> Output:
    return _vertices_output(ex.count_distribution(_need(doc.credal, "credal")))


def cmd_from_count(doc, args) -> Output:
    return _vertices_output(ex.exchangeable_from_count(_need(doc.credal, "credal")))


def cmd_marginal(doc, args) -> Output:
    n = _flag(args.n, "--n")
    return _vertices_output(ex.marginal(_need(doc.credal, "credal"), n))


def cmd_bernstein_eval(doc, args) -> Output:
    p = _poly(doc, args)
    text = _flag(args.theta, "--theta")
    theta = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        label, sep, value = part.partition("=")
        if not sep:
            raise UsageError(f"--theta entry {part!r} should look like 'label=value'")
        theta[label.strip()] = value
    point = bz.SimplexPoint.from_mapping(doc.space, theta)
    return Output({"poly": args.poly, "degree": p.degree, "value": fmt(bz.evaluate(p, point))})


def _coeff_output(p: bz.BernsteinPoly, **fields) -> Output:
    rows = [[point_key(p.as_gamble().domain, m), fmt(c)] for m, c in p.items()]
    fields["degree"] = p.degree
    return Output(fields, ["counts", "coeff"], rows)


def cmd_bernstein_elevate(doc, args) -> Output:
    p = _poly(doc, args)
    n = _flag(args.n, "--n")
    return _coeff_output(bz.elevate_to(p, n), poly=args.poly)


def cmd_bernstein_bounds(doc, args) -> Output:
    p = _poly(doc, args)
    if args.n is not None:
        p = bz.elevate_to(p, args.n)
    lo, hi = bz.bounds(p)
    return Output({"poly": args.poly, "degree": p.degree, "lower": fmt(lo), "upper": fmt(hi)})


def cmd_bernstein_from_monomials(doc, args) -> Output:
    name = _flag(args.poly, "--poly")
    q = doc.polys.get(name)
    if not isinstance(q, bz.MonomialForm):
        raise ModelError(f"polys: {name!r} is not given in monomial form")
    n = q.total_degree if args.n is None else args.n
    return _coeff_output(bz.from_monomials(q, n), poly=name)


def cmd_represent_eval(doc, args) -> Output:
    R = _need(doc.simplex_lp, "simplex_lp")
    p = _poly(doc, args)
    return Output({"poly": args.poly, "lower": fmt(rp.r_eval(R, p)), "upper": fmt(rp.r_upper(R, p))})


def cmd_represent_family(doc, args) -> Output:
    R = _need(doc.simplex_lp, "simplex_lp")
    n = _flag(args.n, "--n")
    P, Q = rp.family_from_r(R, n)
    header, count_rows = _vertex_table(Q)
    _, tuple_rows = _vertex_table(P)
    rows = [["counts"] + r for r in count_rows] + [["tuple"] + r for r in tuple_rows]
    return Output({"n": n, "vertices": len(Q.vertices)}, ["space"] + header, rows)


def cmd_check_consistency(doc, args) -> Output:
    F = _need(doc.family, "family")
    report = rp.check_time_consistency(F)
    out = Output(notes=["true" if report.consistent else "false"])
    out.fields["consistent"] = report.consistent
    out.fields["horizon"] = F.horizon
    if not report.consistent:
        h = report.witness
        out.fields.update(
            n=report.n,
            compared_with=report.larger,
            lower_at_n=fmt(report.lower_at_n),
            lower_from_larger=fmt(report.lower_from_larger),
        )
        out.fields["witness"] = {point_key(h.domain, m): fmt(v) for m, v in h.items()}
        out.header = ["counts", "witness"]
        out.rows = [[k, v] for k, v in out.fields["witness"].items()]
    return out


def cmd_freq(doc, args) -> Output:
    R = _need(doc.simplex_lp, "simplex_lp")
    h = _expr(doc, args)
    n = _flag(args.n, "--n")
    return Output({"h": h.source, "n": n, "lower": fmt(rp.frequency_prevision(R, h, n))})


def cmd_converge(doc, args) -> Output:
    R = _need(doc.simplex_lp, "simplex_lp")
    h = _expr(doc, args)
    ns = parse_ns(_flag(args.ns, "--ns"))
    rows = rp.convergence_table(R, h, ns)
    if rows and rows[0].reference is not None:
        header = ["n", "lower", "reference", "gap"]
        body = [[str(r.n), fmt(r.value), fmt(r.reference), fmt(r.gap)] for r in rows]
    else:
        header = ["n", "lower"]
        body = [[str(r.n), fmt(r.value)] for r in rows]
    return Output({"h": h.source}, header, body)


COMMANDS: dict[str, Callable[[ModelDocument, argparse.Namespace], Output]] = {
    "eval-lower": cmd_eval_lower,
    "eval-upper": cmd_eval_upper,
    "natural-extension": cmd_natural_extension,
    "check-coherence": cmd_check_coherence,
    "check-sure-loss": cmd_check_sure_loss,
    "check-exchangeability": cmd_check_exchangeability,
    "muhy": cmd_muhy,
    "count-dist": cmd_count_dist,
    "from-count": cmd_from_count,
    "marginal": cmd_marginal,
    "bernstein-eval": cmd_bernstein_eval,
    "bernstein-elevate": cmd_bernstein_elevate,
    "bernstein-bounds": cmd_bernstein_bounds,
    "bernstein-from-monomials": cmd_bernstein_from_monomials,
    "represent-eval": cmd_represent_eval,
    "represent-family": cmd_represent_family,
    "check-consistency": cmd_check_consistency,
    "freq": cmd_freq,
    "converge": cmd_converge,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lowprev", description="Exact computations with exchangeable lower previsions.")
    parser.add_argument("command", metavar="command", help="one of: " + ", ".join(COMMANDS))
    parser.add_argument("--model", required=True, help="path to a JSON model document")
    parser.add_argument("--gamble", help="name of a gamble in the document")
    parser.add_argument("--poly", help="name of a polynomial in the document")
    parser.add_argument("--h", help="expression text, or the name of one in the document")
    parser.add_argument("--n", type=int, help="sample size or polynomial degree")
    parser.add_argument("--ns", help="list of sample sizes, e.g. 1..8 or 2,4,8")
    parser.add_argument("--theta", help="simplex point, e.g. a=1/3,b=2/3")
    parser.add_argument("--cap", type=int, help="enumeration cap (default 1000000)")
    fmt_group = parser.add_mutually_exclusive_group()
    fmt_group.add_argument("--json", action="store_true", help="emit JSON")
    fmt_group.add_argument("--csv", action="store_true", help="emit CSV")
    return parser


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command not in COMMANDS:
            raise UsageError(f"unknown command {args.command!r}")
        if args.cap is not None and args.cap < 1:
            raise UsageError("--cap must be positive")
        if args.n is not None and args.n < 0:
            raise UsageError("--n must be non-negative")
    except UsageError as exc:
        stderr.write(parser.format_usage())
        stderr.write(f"lowprev: error: {exc}\n")
        return EXIT_USAGE

    try:
        with enumeration_cap(args.cap or 10**6):
            doc = load(args.model)
            out = COMMANDS[args.command](doc, args)
    except UsageError as exc:
        stderr.write(parser.format_usage())
        stderr.write(f"lowprev: error: {exc}\n")
        return EXIT_USAGE
    except CapacityError as exc:
        stderr.write(f"lowprev: capacity error: {exc}\n")
        return EXIT_CAPACITY
    except SureLossError as exc:
        stderr.write(f"lowprev: sure loss: {exc}\n")
        return EXIT_MODEL
    except LowPrevError as exc:
        stderr.write(f"lowprev: error: {exc}\n")
        return EXIT_MODEL

    if args.json:
        stdout.write(out.as_json())
    elif args.csv:
        stdout.write(out.as_csv())
    else:
        stdout.write(out.as_text())
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    raise SystemExit(main())
