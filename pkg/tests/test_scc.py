from fractions import Fraction
from itertools import combinations

import pytest

from bspace.scc import (LExhausted, SCC, plegma_check, plegma_generate,
                        repeated_average, verify_scc)


def test_repeated_average_order_zero_and_one():
    x0 = repeated_average(0, range(5, 20))
    assert x0.coeffs == {5: Fraction(1)}
    # order 1 from L = {3, 4, 5, ...}: 3 successive Diracs averaged
    x1 = repeated_average(1, range(3, 20))
    assert x1.coeffs == {3: Fraction(1, 3), 4: Fraction(1, 3),
                         5: Fraction(1, 3)}
    assert sum(x1.coeffs.values()) == 1


def test_repeated_average_order_two_structure():
    L = list(range(3, 3 * 2 ** 3))
    x = repeated_average(2, L)
    assert sum(x.coeffs.values()) == 1
    assert min(x.support) == 3
    # the first block is the order-1 average on {3,4,5} scaled by 1/3
    assert x.coeffs[3] == Fraction(1, 9)
    assert verify_scc(x, 2, max(x.coeffs.values()) * 3 + Fraction(1, 100))


def test_l_exhausted():
    with pytest.raises(LExhausted):
        repeated_average(2, range(4, 10))
    with pytest.raises(ValueError):
        repeated_average(-1, range(4, 10))


def test_verify_scc_negative_cases():
    x = repeated_average(1, range(3, 20))
    # eps at or below the largest lower-rank mass fails
    assert not verify_scc(x, 1, Fraction(1, 3))
    assert verify_scc(x, 1, Fraction(1, 3) + Fraction(1, 100))
    # support not in S_n for the demanded order
    fat = SCC((1, 2, 3), {1: Fraction(1, 3), 2: Fraction(1, 3),
                          3: Fraction(1, 3)}, 1)
    assert not verify_scc(fat, 1, Fraction(1))


def test_plegma_check():
    assert plegma_check([])
    assert plegma_check([(1, 5), (2, 6)])
    assert not plegma_check([(1, 5), (2, 4)])  # columns interleave
    assert not plegma_check([(2, 5), (1, 6)])  # rows not monotone
    assert plegma_check([(1, 5), (2, 6)], strict=True)
    assert plegma_check([(1, 5), (1, 6)])
    assert not plegma_check([(1, 5), (1, 6)], strict=True)
    with pytest.raises(ValueError):
        plegma_check([(1, 2), (3,)])


def test_plegma_generate_matches_filtered_product():
    M = range(1, 7)
    got = list(plegma_generate(2, 2, M))
    rows = list(combinations(range(1, 7), 2))
    expect = [(r1, r2) for r1 in rows for r2 in rows
              if plegma_check((r1, r2))]
    assert got == expect
    assert all(plegma_check(f, strict=True)
               for f in plegma_generate(2, 2, M, strict=True))
    with pytest.raises(ValueError):
        list(plegma_generate(3, 3, range(1, 8)))
