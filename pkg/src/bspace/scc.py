"""Repeated averages, special convex combinations and plegma families."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .schreier import check_rank, finset, max_mass, schreier_member


class LExhausted(Exception):
    def __init__(self, msg, deficit):
        super().__init__(msg)
        self.deficit = deficit


@dataclass
class SCC:
    support: tuple[int, ...]
    coeffs: dict[int, Fraction]
    order: int
    eps: Fraction | None = None

    def to_json(self):
        return {"support": list(self.support),
                "coeffs": [[i, str(self.coeffs[i])] for i in self.support],
                "order": self.order,
                "eps": None if self.eps is None else str(self.eps)}


def _repeated(order: int, L: list[int]) -> tuple[dict[int, Fraction], int]:
    """Coefficients of the order-n repeated average along L; returns the
    coefficient map and the number of elements of L consumed."""
    if not L:
        raise LExhausted("L exhausted at order %d" % order, deficit=1)
    if order == 0:
        return {L[0]: Fraction(1)}, 1
    k = L[0]
    out: dict[int, Fraction] = {}
    used = 0
    for i in range(k):
        try:
            sub, c = _repeated(order - 1, L[used:])
        except LExhausted as e:
            raise LExhausted(
                "L exhausted: built %d of %d order-%d averages"
                % (i, k, order - 1), deficit=k - i) from e
        for t, w in sub.items():
            out[t] = out.get(t, Fraction(0)) + w / k
        used += c
    return out, used


def repeated_average(order: int, L: Iterable[int]) -> SCC:
    """The canonical repeated average: order 0 is a Dirac at min L, order
    n the uniform average of the first (min L) successive order-(n-1)
    averages built greedily along L."""
    check_rank(order)
    L = sorted(set(L))
    coeffs, _ = _repeated(order, L)
    support = finset(coeffs)
    assert sum(coeffs.values()) == 1
    return SCC(support, coeffs, order)


def verify_scc(x: SCC, order: int, eps) -> bool:
    """(order, eps)-special convex combination check via max_mass."""
    eps = Fraction(eps)
    if not schreier_member(finset(x.support), order):
        return False
    for m in range(order):
        if max_mass(x.coeffs, m) >= eps:
            return False
    return True


def plegma_check(rows: Sequence[Sequence[int]], strict: bool = False) -> bool:
    if not rows:
        return True
    k = len(rows[0])
    if any(len(r) != k for r in rows):
        raise ValueError("ragged rows")
    # (i): every entry of column j1 < every entry of column j2 > j1
    for j1 in range(k):
        for j2 in range(j1 + 1, k):
            if max(r[j1] for r in rows) >= min(r[j2] for r in rows):
                return False
    # (ii): columns monotone over the rows
    for i1 in range(len(rows)):
        for i2 in range(i1 + 1, len(rows)):
            for j in range(k):
                if strict:
                    if rows[i1][j] >= rows[i2][j]:
                        return False
                elif rows[i1][j] > rows[i2][j]:
                    return False
    return True


def plegma_generate(l: int, k: int, M: Iterable[int],
                    strict: bool = False) -> Iterator[tuple]:
    """All (strict) plegma families of l rows in [M]^k, lexicographic."""
    M = sorted(set(M))
    if len(M) < l * k:
        raise ValueError("need at least l*k = %d points, got %d"
                         % (l * k, len(M)))
    rows = list(combinations(M, k))
    for fam in product(rows, repeat=l):
        if plegma_check(fam, strict=strict):
            yield fam
