"""Schreier families S_n for finite ranks n: membership, maximality and
exact mass optimization.

A finite set F of positive integers belongs to S_0 iff it has at most one
element; F belongs to S_{n+1} iff it splits into k successive S_n-blocks
with k <= min F.  Only finite ranks are supported.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

FinSet = tuple[int, ...]


def finset(elements: Iterable[int]) -> FinSet:
    """Canonicalize a finite set of positive integers (strictly increasing)."""
    t = tuple(sorted(set(elements)))
    if t and t[0] < 1:
        raise ValueError("elements must be >= 1, got %r" % (t[0],))
    return t


def check_rank(n: int) -> int:
    if n < 0:
        raise ValueError("Schreier rank must be >= 0, got %r" % (n,))
    return n


@lru_cache(maxsize=None)
def schreier_member(F: FinSet, n: int) -> bool:
    """True iff F is in the Schreier family S_n."""
    check_rank(n)
    if len(F) <= 1:
        return True
    if n == 0:
        return False
    m = len(F)
    # minblocks[i] = least number of successive S_{n-1}-blocks covering F[i:]
    minblocks = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        best = None
        for L in range(1, m - i + 1):
            if not schreier_member(F[i:i + L], n - 1):
                break
            cand = 1 + minblocks[i + L]
            if best is None or cand < best:
                best = cand
        minblocks[i] = best if best is not None else m + 1
    return minblocks[0] <= F[0]


def schreier_maximal(F: FinSet, n: int) -> bool:
    """True iff F is in S_n and no right-extension of F stays in S_n."""
    F = finset(F)
    if not schreier_member(F, n):
        raise ValueError("set %r is not in S_%d" % (F, n))
    # membership of F + {K} is monotone in K by the spreading property,
    # so one sufficiently large probe element decides extensibility
    probe = max(F, default=0) + len(F) + n + 2
    return not schreier_member(F + (probe,), n)


def max_mass(weights: Mapping[int, Fraction], m: int) -> Fraction:
    """Exact max of total weight over subsets of the support lying in S_m.

    Computed by recursive block decomposition; the brute-force subset
    enumeration oracle for this lives in the test suite.
    """
    check_rank(m)
    support = sorted(i for i, w in weights.items() if w != 0)
    if any(weights[i] < 0 for i in support):
        raise ValueError("weights must be nonnegative")
    if not support:
        return Fraction(0)
    w = [Fraction(weights[i]) for i in support]
    v = support
    nn = len(support)

    @lru_cache(maxsize=None)
    def best_set(i: int, j: int, rank: int) -> Fraction:
        # best mass of an S_rank subset of support[i..j] with min == v[i]
        if rank == 0:
            return w[i]
        best = w[i]  # singleton is always admissible
        for jp in range(i, j + 1):
            first = best_set(i, jp, rank - 1)
            rest = best_blocks(jp + 1, j, min(v[i] - 1, j - jp), rank - 1)
            if first + rest > best:
                best = first + rest
        return best

    @lru_cache(maxsize=None)
    def best_blocks(i: int, j: int, k: int, rank: int) -> Fraction:
        # best mass of <= k successive S_rank blocks within support[i..j]
        if i > j or k <= 0:
            return Fraction(0)
        best = best_blocks(i + 1, j, k, rank)  # skip element i
        for jp in range(i, j + 1):
            cand = best_set(i, jp, rank) + best_blocks(jp + 1, j, k - 1, rank)
            if cand > best:
                best = cand
        return best

    result = Fraction(0)
    for i in range(nn):
        cand = best_set(i, nn - 1, m)
        if cand > result:
            result = cand
    best_set.cache_clear()
    best_blocks.cache_clear()
    return result
