"""Exact arithmetic for values of the form sum_i c_i * sqrt(d_i).

All norm values produced by the engines in this package live in the
Q-vector space spanned by square roots of positive integers, so they can
be represented exactly as a map {squarefree radicand -> rational
coefficient}.  Distinct squarefree radicands are linearly independent
over Q, hence a canonical form is zero iff it has no terms.  Signs of
nonzero values are decided with rational interval enclosures of the
square roots, at increasing precision; the loop terminates because a
canonically nonzero value is a nonzero real number.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rat = Union[int, Fraction]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

# trial-division bound for square extraction; beyond it we only test for a
# perfect-square remainder, which covers every radicand this package produces
_TRIAL_BOUND = 100_000


def squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, d) with n == s*s*d and d squarefree (up to the trial bound)."""
    if n <= 0:
        raise ValueError("radicand must be positive")
    s, d = 1, 1
    for p in _SMALL_PRIMES:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        d *= p ** (e % 2)
    p = 53
    while p * p <= n and p <= _TRIAL_BOUND:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        d *= p ** (e % 2)
        p += 2
    if n > 1:
        r = math.isqrt(n)
        if r * r == n:
            s *= r
        else:
            d *= n
    return s, d


def _sqrt_interval(d: int, prec: int) -> tuple[Fraction, Fraction]:
    """Rational enclosure of sqrt(d) with width 10**-prec."""
    scale = 10 ** prec
    lo = math.isqrt(d * scale * scale)
    return Fraction(lo, scale), Fraction(lo + 1, scale)


class RadSum:
    """Exact value sum_d coeff[d] * sqrt(d), d squarefree positive int."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self.terms = {d: c for d, c in (terms or {}).items() if c != 0}

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, q: Rat) -> "RadSum":
        q = Fraction(q)
        return cls({1: q} if q else {})

    @classmethod
    def sqrt(cls, q: Rat) -> "RadSum":
        """Exact sqrt of a nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("sqrt of negative rational")
        if q == 0:
            return cls()
        # sqrt(p/q) = sqrt(p*q)/q
        n = q.numerator * q.denominator
        s, d = squarefree_split(n)
        return cls({d: Fraction(s, q.denominator)})

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "RadSum | Rat") -> "RadSum":
        other = _coerce(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, Fraction(0)) + c
        return RadSum(out)

    __radd__ = __add__

    def __neg__(self) -> "RadSum":
        return RadSum({d: -c for d, c in self.terms.items()})

    def __sub__(self, other: "RadSum | Rat") -> "RadSum":
        return self + (-_coerce(other))

    def __mul__(self, other: "RadSum | Rat") -> "RadSum":
        other = _coerce(other)
        out: dict[int, Fraction] = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                s, d = squarefree_split(d1 * d2)
                out[d] = out.get(d, Fraction(0)) + c1 * c2 * s
        return RadSum(out)

    __rmul__ = __mul__

    def scale(self, q: Rat) -> "RadSum":
        q = Fraction(q)
        return RadSum({d: c * q for d, c in self.terms.items()})

    # -- predicates / comparisons ------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_rational(self) -> bool:
        return set(self.terms) <= {1}

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not a rational value: %s" % self)
        return self.terms.get(1, Fraction(0))

    def sign(self) -> int:
        if not self.terms:
            return 0
        signs = {c > 0 for c in self.terms.values()}
        if signs == {True}:
            return 1
        if signs == {False}:
            return -1
        for prec in (30, 60, 120, 240, 480):
            lo = Fraction(0)
            hi = Fraction(0)
            for d, c in self.terms.items():
                a, b = _sqrt_interval(d, prec)
                if c > 0:
                    lo += c * a
                    hi += c * b
                else:
                    lo += c * b
                    hi += c * a
            if lo > 0:
                return 1
            if hi < 0:
                return -1
        raise ArithmeticError("sign undecided at maximum precision: %s" % self)

    def _cmp(self, other: "RadSum | Rat") -> int:
        return (self - _coerce(other)).sign()

    def __eq__(self, other) -> bool:
        if isinstance(other, (RadSum, int, Fraction)):
            return (self - _coerce(other)).is_zero
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- output -------------------------------------------------------

    def __float__(self) -> float:
        return sum(float(c) * math.sqrt(d) for d, c in self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for d in sorted(self.terms):
            c = self.terms[d]
            parts.append(str(c) if d == 1 else "%s*sqrt(%d)" % (c, d))
        return " + ".join(parts)

    def to_json(self):
        """Serialize as [[d, "p/q"], ...] with deterministic order."""
        return [[d, str(self.terms[d])] for d in sorted(self.terms)]

    @classmethod
    def from_json(cls, data) -> "RadSum":
        return cls({int(d): Fraction(c) for d, c in data})


def _coerce(v: "RadSum | Rat") -> RadSum:
    if isinstance(v, RadSum):
        return v
    return RadSum.from_rational(v)


ZERO = RadSum()
ONE = RadSum.from_rational(1)


def rad_max(values):
    """Exact maximum of an iterable of RadSum values."""
    best = None
    for v in values:
        if best is None or v > best:
            best = v
    if best is None:
        raise ValueError("max of empty iterable")
    return best
