import random
from fractions import Fraction
from itertools import chain, combinations

import pytest

from bspace.schreier import (check_rank, finset, max_mass, schreier_maximal,
                             schreier_member)


def brute_max_mass(weights, m):
    """Reference: max weight of a rank-m Schreier subset of the support."""
    supp = sorted(weights)
    best = Fraction(0)
    for k in range(len(supp) + 1):
        for sub in combinations(supp, k):
            if schreier_member(sub, m):
                best = max(best, sum((weights[t] for t in sub), Fraction(0)))
    return best


def test_rank_zero_and_one():
    assert schreier_member((), 0)
    assert schreier_member((5,), 0)
    assert not schreier_member((5, 6), 0)
    # S_1: |F| <= min F
    assert schreier_member((1,), 1)
    assert not schreier_member((1, 2), 1)
    assert schreier_member((2, 3), 1)
    assert schreier_member((3, 10, 20), 1)
    assert not schreier_member((3, 10, 20, 21), 1)


def test_hereditary_and_spreading():
    rng = random.Random(1)
    for _ in range(300):
        n = rng.randint(0, 3)
        F = tuple(sorted(rng.sample(range(1, 30), rng.randint(0, 6))))
        if not schreier_member(F, n):
            continue
        # hereditary: subsets stay in
        for k in range(len(F)):
            sub = F[:k] + F[k + 1:]
            assert schreier_member(sub, n)
        # spreading: pushing elements right stays in
        shifted = tuple(t + i for i, t in enumerate(sorted(F)))
        assert schreier_member(shifted, n)


def test_rank_nesting():
    rng = random.Random(2)
    for _ in range(200):
        F = tuple(sorted(rng.sample(range(1, 25), rng.randint(1, 5))))
        for n in range(3):
            if schreier_member(F, n):
                assert schreier_member(F, n + 1)


def test_maximal():
    assert schreier_maximal((2, 3), 1)
    assert not schreier_maximal((3, 4), 1)
    assert schreier_maximal((1,), 1)


def test_max_mass_against_brute_force():
    rng = random.Random(3)
    for _ in range(60):
        supp = rng.sample(range(1, 20), rng.randint(1, 7))
        weights = {t: Fraction(rng.randint(1, 8), 8) for t in supp}
        for m in range(3):
            assert max_mass(weights, m) == brute_max_mass(weights, m)


def test_max_mass_larger_supports():
    # the engine must handle supports beyond the brute-force range
    weights = {t: Fraction(1, t) for t in range(2, 60)}
    v1 = max_mass(weights, 1)
    # best S_1 set: {2, 3} gives 1/2 + 1/3
    assert v1 == Fraction(5, 6)
    assert max_mass(weights, 2) >= v1


def test_check_rank_rejects_negative():
    with pytest.raises(ValueError):
        check_rank(-1)
    with pytest.raises(ValueError):
        schreier_member((1, 2), -2)


def test_finset_sorts_and_dedups():
    assert finset([3, 1, 2, 3]) == (1, 2, 3)
