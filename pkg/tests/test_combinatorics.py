import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lowprev import (
    CapacityError,
    CategorySpace,
    CountVector,
    InvalidCategoryError,
    atom,
    count_vector,
    enumerate_count_vectors,
    enumerate_tuples,
    enumeration_cap,
    nu,
)
from lowprev.errors import ValidationError
from helpers import AB, ABC, cv


def test_count_vector_examples():
    assert count_vector(AB, ("a", "b", "a")).as_dict() == {"a": 2, "b": 1}
    assert count_vector(AB, ("b", "b")).as_dict() == {"a": 0, "b": 2}
    assert count_vector(ABC, ("a", "b", "c", "b")).as_dict() == {"a": 1, "b": 2, "c": 1}


def test_count_vector_rejects_unknown_label():
    with pytest.raises(InvalidCategoryError):
        count_vector(AB, ("a", "z"))


def test_enumerate_count_vectors_examples():
    assert [m.counts for m in enumerate_count_vectors(AB, 2)] == [(2, 0), (1, 1), (0, 2)]
    assert [m.counts for m in enumerate_count_vectors(CategorySpace(["a"]), 5)] == [(5,)]


@pytest.mark.parametrize("k,N", [(1, 0), (1, 4), (2, 0), (2, 5), (3, 3), (3, 4), (4, 3)])
def test_enumerate_count_vectors_matches_brute_force(k, N):
    space = CategorySpace([f"x{i}" for i in range(k)])
    brute = {c for c in itertools.product(range(N + 1), repeat=k) if sum(c) == N}
    got = [m.counts for m in enumerate_count_vectors(space, N)]
    assert len(got) == len(set(got)) == len(brute) == math.comb(N + k - 1, k - 1)
    assert set(got) == brute
    # reverse-lexicographic
    assert got == sorted(got, reverse=True)


def test_three_categories_three_draws_has_ten_vectors():
    assert len(enumerate_count_vectors(ABC, 3)) == 10


def test_atom_examples():
    assert set(atom(cv(AB, 1, 1))) == {("a", "b"), ("b", "a")}
    assert atom(cv(AB, 2, 0)) == [("a", "a")]
    brute = [z for z in itertools.product("ab", repeat=3) if z.count("a") == 2]
    assert sorted(atom(cv(AB, 2, 1))) == sorted(brute)


def test_nu_examples():
    assert nu(cv(AB, 1, 1)) == 2
    assert nu(cv(AB, 2, 0)) == 1
    assert nu(cv(ABC, 2, 1, 1)) == len(set(itertools.permutations("aabc"))) == 12


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("N", [0, 1, 2, 3, 4])
def test_nu_sums_to_number_of_tuples(k, N):
    space = CategorySpace([f"x{i}" for i in range(k)])
    assert sum(nu(m) for m in enumerate_count_vectors(space, N)) == k**N


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_atoms_partition_tuple_space(N):
    seen = []
    for m in enumerate_count_vectors(ABC, N):
        members = atom(m)
        assert len(members) == len(set(members)) == nu(m)
        assert all(count_vector(ABC, z) == m for z in members)
        seen.extend(members)
    assert sorted(seen) == sorted(enumerate_tuples(ABC, N))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from("abc"), min_size=1, max_size=5))
def test_count_vector_is_permutation_invariant(z):
    m = count_vector(ABC, z)
    for perm in itertools.permutations(range(len(z))):
        assert count_vector(ABC, [z[i] for i in perm]) == m


def test_large_nu_is_exact():
    big = CountVector(ABC, (30, 20, 10))
    assert nu(big) == math.factorial(60) // (math.factorial(30) * math.factorial(20) * math.factorial(10))


def test_enumeration_cap():
    with enumeration_cap(10):
        with pytest.raises(CapacityError):
            atom(cv(AB, 3, 2))  # 10 fits
            atom(cv(AB, 3, 3))  # 20 does not
        with pytest.raises(CapacityError):
            enumerate_tuples(ABC, 3)
    assert len(atom(cv(AB, 3, 3))) == 20


def test_default_cap_refuses_huge_atoms():
    with pytest.raises(CapacityError):
        atom(cv(ABC, 8, 8, 8))


def test_count_vector_validation():
    with pytest.raises(ValidationError):
        CountVector(AB, (1, -1))
    with pytest.raises(ValidationError):
        CountVector(AB, (1, 1, 1))
    with pytest.raises(ValidationError):
        CategorySpace(["a", "a"])
    with pytest.raises(ValidationError):
        CategorySpace([])


def test_count_vector_arithmetic():
    assert cv(AB, 2, 1) - cv(AB, 1, 1) == cv(AB, 1, 0)
    assert cv(AB, 1, 0) <= cv(AB, 2, 1)
    assert not cv(AB, 0, 2) <= cv(AB, 2, 1)
    with pytest.raises(ValidationError):
        cv(AB, 0, 2) - cv(AB, 1, 0)
