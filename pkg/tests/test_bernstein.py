import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lowprev import (
    BernsteinPoly,
    CategorySpace,
    DegreeError,
    Domain,
    Expression,
    Gamble,
    MonomialForm,
    SimplexPoint,
    basis_eval,
    bernstein_approximant,
    bounds,
    comn,
    elevate,
    elevate_to,
    enumerate_count_vectors,
    evaluate,
    from_monomials,
    mn,
    muhy_gamble,
)
from lowprev.errors import ValidationError
from helpers import AB, ABC, cv, random_gamble, random_poly, random_theta

F = Fraction


def theta_ab(a, b) -> SimplexPoint:
    return SimplexPoint(AB, (F(a), F(b)))


def poly(space, *coeffs) -> BernsteinPoly:
    degree = next(d for d in range(20) if len(enumerate_count_vectors(space, d)) == len(coeffs))
    return BernsteinPoly(space, degree, tuple(F(c) for c in coeffs))


def solve_exact(matrix, rhs):
    """Gauss-Jordan elimination over the rationals."""
    n = len(matrix)
    rows = [list(r) + [v] for r, v in zip(matrix, rhs)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [v / lead for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return [row[-1] for row in rows]


def coefficients_by_interpolation(values_at, space, n):
    """Oracle: Bernstein coefficients from values on the lattice ``{m / n}``, which is unisolvent."""
    grid = [SimplexPoint.frequency(m) for m in enumerate_count_vectors(space, n)]
    basis = enumerate_count_vectors(space, n)
    matrix = [[basis_eval(m, t) for m in basis] for t in grid]
    return solve_exact(matrix, [values_at(t) for t in grid])


def test_simplex_point_validation():
    with pytest.raises(ValidationError):
        SimplexPoint(AB, (F(1, 2), F(1, 3)))
    with pytest.raises(ValidationError):
        SimplexPoint(AB, (F(3, 2), F(-1, 2)))
    assert SimplexPoint.vertex(ABC, "b").coords == (0, 1, 0)


def test_basis_examples():
    assert basis_eval(cv(AB, 1, 1), theta_ab(F(1, 2), F(1, 2))) == F(1, 2)
    assert basis_eval(cv(AB, 2, 0), theta_ab(1, 0)) == 1
    assert basis_eval(cv(AB, 0, 2), theta_ab(1, 0)) == 0


def test_evaluate_examples():
    assert evaluate(poly(AB, 1, F(1, 2), 0), theta_ab(F(1, 2), F(1, 2))) == F(1, 2)
    assert evaluate(poly(AB, 0, 1, 0), theta_ab(F(1, 3), F(2, 3))) == F(4, 9)
    c = F(-7, 3)
    p = BernsteinPoly.constant(ABC, c, 4)
    rng = random.Random(0)
    assert all(evaluate(p, random_theta(rng, ABC)) == c for _ in range(5))


def test_comn_examples():
    counts = Domain.counts(AB, 2)
    t = theta_ab(F(1, 3), F(2, 3))
    assert comn(Gamble.constant(counts, 1), t) == 1
    assert comn(Gamble.from_function(counts, lambda m: F(m["a"], 2)), t) == F(1, 3)
    assert comn(Gamble.indicator(counts, [cv(AB, 1, 1)]), theta_ab(F(1, 2), F(1, 2))) == F(1, 2)


def test_mn_examples():
    X2 = Domain.tuples(AB, 2)
    assert mn(Gamble.indicator(X2, [("a", "a")]), theta_ab(F(1, 2), F(1, 2))) == F(1, 4)
    assert mn(Gamble.indicator(X2, [("a", "b")]), theta_ab(F(1, 3), F(2, 3))) == F(2, 9)
    assert mn(Gamble.constant(X2, 1), theta_ab(F(1, 3), F(2, 3))) == 1


@pytest.mark.parametrize("seed", range(10))
def test_mn_matches_product_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    f = random_gamble(rng, Domain.tuples(ABC, n))
    t = random_theta(rng, ABC)
    direct = F(0)
    for z in itertools.product("abc", repeat=n):
        weight = F(1)
        for x in z:
            weight *= t[x]
        direct += f(z) * weight
    assert mn(f, t) == direct


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_mn_factors_through_counts(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    space = ABC if n <= 4 else AB
    f = random_gamble(rng, Domain.tuples(space, n))
    t = random_theta(rng, space)
    assert mn(f, t) == comn(muhy_gamble(f), t)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [0, 1, 3, 6])
def test_partition_of_unity_and_nonnegativity(k, n):
    space = CategorySpace([f"x{i}" for i in range(k)])
    rng = random.Random(k * 10 + n)
    for _ in range(4):
        t = random_theta(rng, space)
        values = [basis_eval(m, t) for m in enumerate_count_vectors(space, n)]
        assert sum(values) == 1
        assert all(v >= 0 for v in values)


def test_elevation_examples():
    assert elevate(poly(AB, 1, 0), 1).coeffs == (1, F(1, 2), 0)
    assert elevate(poly(AB, 0, F(1, 2), 0), 2).coeffs == (0, F(1, 4), F(1, 3), F(1, 4), 0)
    p = poly(AB, 3, 5)
    assert elevate(p, 0) == p


@pytest.mark.parametrize("seed", range(12))
def test_elevation_preserves_values_and_composes(seed):
    rng = random.Random(seed)
    space = ABC if seed % 2 else AB
    p = random_poly(rng, space, rng.randint(0, 3))
    j, k = rng.randint(0, 3), rng.randint(0, 4)
    q = elevate(p, k)
    for _ in range(10):
        t = random_theta(rng, space)
        assert evaluate(q, t) == evaluate(p, t)
    assert elevate(elevate(p, j), k) == elevate(p, j + k)
    assert elevate_to(p, p.degree + k) == q
    assert p.same_polynomial(q)


def test_elevation_errors():
    p = poly(AB, 1, 0)
    with pytest.raises(DegreeError):
        elevate(p, -1)
    with pytest.raises(DegreeError):
        elevate_to(p, 0)


def test_bernstein_arithmetic():
    p = poly(AB, 1, 0)  # theta_a
    q = poly(AB, 0, F(1, 2), 0)  # theta_a theta_b
    s = p + q
    assert s.degree == 2
    t = theta_ab(F(1, 4), F(3, 4))
    assert evaluate(s, t) == F(1, 4) + F(3, 16)
    assert evaluate(p - q, t) == F(1, 4) - F(3, 16)
    assert evaluate(3 * q, t) == F(9, 16)
    assert not p.same_polynomial(q)


def test_from_monomials_examples():
    theta_a = MonomialForm.from_dict(AB, {(1, 0): 1})
    assert from_monomials(theta_a, 2).coeffs == (1, F(1, 2), 0)
    one = MonomialForm.from_dict(ABC, {(0, 0, 0): 1})
    assert set(from_monomials(one, 3).coeffs) == {1}
    prod = MonomialForm.from_dict(AB, {(1, 1): 1})
    assert from_monomials(prod, 2).coeffs == (0, F(1, 2), 0)
    with pytest.raises(DegreeError):
        from_monomials(prod, 1)


@pytest.mark.parametrize("seed", range(10))
def test_from_monomials_matches_interpolation_oracle(seed):
    rng = random.Random(seed)
    space = ABC if seed % 2 else AB
    terms = {}
    for _ in range(rng.randint(1, 4)):
        e = tuple(rng.randint(0, 2) for _ in space)
        terms[e] = F(rng.randint(-6, 6), rng.randint(1, 4))
    q = MonomialForm.from_dict(space, terms)
    n = q.total_degree + rng.randint(0, 2)
    b = from_monomials(q, n)
    assert list(b.coeffs) == coefficients_by_interpolation(q, space, n)
    for _ in range(20):
        t = random_theta(rng, space)
        assert evaluate(b, t) == q(t)
    # converting at a higher degree equals converting then elevating
    assert from_monomials(q, n + 2) == elevate(b, 2)


def test_bounds_examples():
    q = poly(AB, 0, F(1, 2), 0)
    assert bounds(q) == (0, F(1, 2))
    assert bounds(elevate(q, 2)) == (0, F(1, 3))
    assert bounds(BernsteinPoly.constant(ABC, 5, 3)) == (5, 5)


@pytest.mark.parametrize("seed", range(10))
def test_bounds_are_nested_and_enclose_values(seed):
    rng = random.Random(seed)
    space = ABC if seed % 2 else AB
    p = random_poly(rng, space, rng.randint(1, 3))
    lo, hi = bounds(p)
    for k in range(1, 5):
        lo_k, hi_k = bounds(elevate(p, k))
        assert lo <= lo_k <= hi_k <= hi
        lo, hi = lo_k, hi_k
    for _ in range(10):
        assert lo <= evaluate(p, random_theta(rng, space)) <= hi


def test_enclosure_of_product_approaches_grid_maximum():
    q = poly(AB, 0, F(1, 2), 0)
    grid_max = max(F(i, 1000) * (1 - F(i, 1000)) for i in range(1001))
    assert grid_max == F(1, 4)
    highs = {n: bounds(elevate_to(q, n))[1] for n in range(2, 13)}
    # closed form: max over m of m_a m_b / (n (n - 1))
    assert highs == {n: F((n // 2) * (n - n // 2), n * (n - 1)) for n in highs}
    even = [highs[n] for n in range(2, 13, 2)]
    assert even[:2] == [F(1, 2), F(1, 3)]
    assert all(a > b for a, b in zip(even, even[1:]))
    assert all(a >= b for a, b in zip(list(highs.values()), list(highs.values())[1:]))
    assert all(h >= grid_max for h in highs.values())


def test_approximant_examples():
    linear = bernstein_approximant(Expression.parse("theta.a"), 3, AB)
    assert linear.coeffs == (1, F(2, 3), F(1, 3), 0)
    t = theta_ab(F(2, 7), F(5, 7))
    assert evaluate(linear, t) == F(2, 7)
    square = bernstein_approximant(Expression.parse("sq(theta.a)"), 2, AB)
    assert square.coeffs == (1, F(1, 4), 0)
    assert evaluate(square, t) == t["a"] ** 2 + t["a"] * t["b"] / 2
    const = bernstein_approximant(Expression.parse("5/2"), 4, ABC)
    assert set(const.coeffs) == {F(5, 2)}


def test_approximant_of_kink_converges_uniformly_on_grid():
    h = Expression.parse("abs(theta.a - 1/2)")
    grid = [theta_ab(F(i, 100), 1 - F(i, 100)) for i in range(101)]
    gaps = []
    for n in (2, 4, 8, 16, 32):
        b = bernstein_approximant(h, n, AB)
        gaps.append(max(abs(evaluate(b, t) - h(t.as_dict())) for t in grid))
    assert all(a >= b for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < F(1, 10)
