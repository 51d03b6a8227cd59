"""Exact rational linear programming.

Two-phase tableau simplex over :class:`fractions.Fraction` with Bland's
smallest-index rule, which rules out cycling. Problems are stated as::

    minimise    c . x
    subject to  A_eq x == b_eq,  A_ge x >= b_ge,  x >= 0
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int], ncols: int):
        self.rows = rows  # each row: ncols coefficients followed by the rhs
        self.basis = basis
        self.ncols = ncols
        self.obj: list[Fraction] = [_ZERO] * (ncols + 1)

    def set_objective(self, cost: Sequence[Fraction]) -> None:
        obj = list(cost) + [_ZERO]
        obj.extend([_ZERO] * (self.ncols + 1 - len(obj)))
        for row, b in zip(self.rows, self.basis):
            cb = obj[b]
            if cb:
                for j, v in enumerate(row):
                    if v:
                        obj[j] -= cb * v
        self.obj = obj

    def pivot(self, r: int, col: int) -> None:
        prow = self.rows[r]
        piv = prow[col]
        if piv != _ONE:
            prow = [v / piv for v in prow]
            self.rows[r] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            factor = row[col]
            if factor:
                for j in nz:
                    row[j] -= factor * prow[j]
        factor = self.obj[col]
        if factor:
            for j in nz:
                self.obj[j] -= factor * prow[j]
        self.basis[r] = col

    def run(self, allowed: int) -> str:
        """Iterate until optimal; only columns ``< allowed`` may enter."""
        while True:
            col = next((j for j in range(allowed) if self.obj[j] < 0), None)
            if col is None:
                return OPTIMAL
            best_row, best_ratio = None, None
            for i, row in enumerate(self.rows):
                a = row[col]
                if a > 0:
                    ratio = row[-1] / a
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < self.basis[best_row])
                    ):
                        best_row, best_ratio = i, ratio
            if best_row is None:
                return UNBOUNDED
            self.pivot(best_row, col)


def solve(
    c: Sequence[Fraction],
    A_eq: Sequence[Sequence[Fraction]] = (),
    b_eq: Sequence[Fraction] = (),
    A_ge: Sequence[Sequence[Fraction]] = (),
    b_ge: Sequence[Fraction] = (),
) -> LPResult:
    """Minimise ``c . x`` over the polyhedron; every variable is non-negative."""
    n = len(c)
    n_ge = len(A_ge)
    rows: list[list[Fraction]] = []
    for a, b in zip(A_eq, b_eq):
        rows.append([Fraction(v) for v in a] + [_ZERO] * n_ge + [Fraction(b)])
    for k, (a, b) in enumerate(zip(A_ge, b_ge)):
        surplus = [_ZERO] * n_ge
        surplus[k] = -_ONE
        rows.append([Fraction(v) for v in a] + surplus + [Fraction(b)])
    for row in rows:
        if len(row) != n + n_ge + 1:
            raise ValueError("constraint row length does not match the cost vector")
        if row[-1] < 0:
            row[:] = [-v for v in row]

    n_real = n + n_ge
    m = len(rows)
    ncols = n_real + m
    full = []
    for i, row in enumerate(rows):
        art = [_ZERO] * m
        art[i] = _ONE
        full.append(row[:-1] + art + [row[-1]])
    tab = _Tableau(full, [n_real + i for i in range(m)], ncols)

    # phase one: drive the artificial variables to zero
    tab.set_objective([_ZERO] * n_real + [_ONE] * m)
    tab.run(n_real)
    if -tab.obj[-1] > 0:
        return LPResult(INFEASIBLE)

    # pivot remaining (zero-level) artificials out; drop rows that are redundant
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n_real:
            col = next((j for j in range(n_real) if tab.rows[i][j] != 0), None)
            if col is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, col)
        i += 1

    tab.set_objective([Fraction(v) for v in c] + [_ZERO] * (ncols - n))
    if tab.run(n_real) == UNBOUNDED:
        return LPResult(UNBOUNDED)

    x = [_ZERO] * n_real
    for row, b in zip(tab.rows, tab.basis):
        if b < n_real:
            x[b] = row[-1]
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), _ZERO)
    return LPResult(OPTIMAL, value, tuple(x[:n]))


def minimise_over_credal_polytope(
    objective: Sequence[Fraction],
    constraints: Sequence[tuple[Sequence[Fraction], Fraction]],
) -> LPResult:
    """Minimise ``objective . p`` over mass functions ``p`` with ``g . p >= mu`` per constraint."""
    d = len(objective)
    return solve(
        objective,
        A_eq=[[_ONE] * d],
        b_eq=[_ONE],
        A_ge=[list(g) for g, _ in constraints],
        b_ge=[mu for _, mu in constraints],
    )


def in_convex_hull(point: Sequence[Fraction], generators: Sequence[Sequence[Fraction]]) -> bool:
    """Exact membership of ``point`` in the convex hull of ``generators``."""
    if not generators:
        return False
    k = len(generators)
    d = len(point)
    A_eq = [[Fraction(g[i]) for g in generators] for i in range(d)]
    A_eq.append([_ONE] * k)
    b_eq = [Fraction(v) for v in point] + [_ONE]
    return solve([_ZERO] * k, A_eq=A_eq, b_eq=b_eq).feasible


def extreme_points(vectors: Sequence[Sequence[Fraction]]) -> list[int]:
    """Indices of an irredundant subset with the same convex hull.

    A vector is dropped when it lies in the hull of the vectors still kept;
    duplicates keep their first occurrence.
    """
    kept = list(range(len(vectors)))
    for i in range(len(vectors) - 1, -1, -1):
        others = [vectors[j] for j in kept if j != i]
        if others and in_convex_hull(vectors[i], others):
            kept.remove(i)
    return kept


def separating_direction(
    point: Sequence[Fraction], generators: Sequence[Sequence[Fraction]]
) -> tuple[Fraction, ...] | None:
    """A vector ``h`` in ``[-1, 1]^d`` with ``h . point < min_g h . g``, or None.

    None means ``point`` lies in the hull of ``generators``.
    """
    d = len(point)
    # variables: u_0..u_{d-1} in [0, 2] (h = u - 1), then s, r >= 0 with t = s - r
    cost = [Fraction(v) for v in point] + [-_ONE, _ONE]
    A_ge, b_ge = [], []
    for g in generators:
        A_ge.append([Fraction(v) for v in g] + [-_ONE, _ONE])
        b_ge.append(sum((Fraction(v) for v in g), _ZERO))
    for i in range(d):
        row = [_ZERO] * (d + 2)
        row[i] = -_ONE
        A_ge.append(row)
        b_ge.append(Fraction(-2))
    res = solve(cost, A_ge=A_ge, b_ge=b_ge)
    h = tuple(u - 1 for u in res.x[:d])
    lhs = sum((hi * Fraction(p) for hi, p in zip(h, point)), _ZERO)
    rhs = min(sum((hi * Fraction(v) for hi, v in zip(h, g)), _ZERO) for g in generators)
    return h if lhs < rhs else None
