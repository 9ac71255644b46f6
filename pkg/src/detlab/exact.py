"""Exact rationals, heights, primitive vectors and bounded enumerations.

``fractions.Fraction`` is the rational type throughout: it is reduced on
construction, so ``gcd(|num|, den) == 1`` and ``den >= 1`` hold at every
observation point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

import numpy as np

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction (never floats)."""
    if isinstance(value, float):
        raise TypeError("floating-point values are not accepted as exact rationals")
    return Fraction(value)


def rational_str(value: Fraction) -> str:
    """Serialize as ``"p/q"`` (or ``"p"`` for integers)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def height(a) -> int:
    """H(p/q) = max(|p|, q) for p/q in lowest terms."""
    a = Fraction(a)
    return max(abs(a.numerator), a.denominator)


class PrimVec(NamedTuple):
    x: int
    y: int


def primitivize(x: int, y: int) -> PrimVec:
    if x <= 0 or y <= 0:
        raise ValueError(f"primitivize needs positive coordinates, got ({x}, {y})")
    g = math.gcd(x, y)
    return PrimVec(x // g, y // g)


@dataclass(frozen=True)
class IntervalQ:
    """An interval with rational endpoints; each end may be open or closed."""

    lo: Fraction
    hi: Fraction
    closed_lo: bool = True
    closed_hi: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")
        if self.lo == self.hi and not (self.closed_lo and self.closed_hi):
            raise ValueError("a degenerate interval must be closed at both ends")

    def __contains__(self, x) -> bool:
        x = Fraction(x)
        if x < self.lo or (x == self.lo and not self.closed_lo):
            return False
        if x > self.hi or (x == self.hi and not self.closed_hi):
            return False
        return True

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __str__(self) -> str:
        left = "[" if self.closed_lo else "("
        right = "]" if self.closed_hi else ")"
        return f"{left}{rational_str(self.lo)},{rational_str(self.hi)}{right}"


def closed(lo, hi) -> IntervalQ:
    return IntervalQ(as_rational(lo), as_rational(hi), True, True)


# -- primitive vectors -------------------------------------------------------

def enumerate_S(X: int) -> list[PrimVec]:
    """All primitive (x, y) with x, y > 0 and x + y <= X, by increasing slope y/x."""
    if X < 2:
        return []
    vecs = [PrimVec(x, s - x)
            for s in range(2, X + 1)
            for x in range(1, s)
            if math.gcd(x, s) == 1]
    vecs.sort(key=lambda v: Fraction(v.y, v.x))
    return vecs


def totients(n: int) -> np.ndarray:
    """Euler phi for 0..n as an int64 array (sieve)."""
    phi = np.arange(n + 1, dtype=np.int64)
    if n < 2:
        return phi
    is_prime = np.ones(n + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    for p in np.flatnonzero(is_prime):
        phi[p::p] -= phi[p::p] // p
    return phi


_CHUNK = 1 << 14


def s_count_and_sum(X: int) -> tuple[int, int]:
    """(|S_X|, sum of x over S_X) without building S_X.

    The vectors with x + y = s are (x, s - x) with gcd(x, s) = 1, so they
    number phi(s) and their x-coordinates sum to s*phi(s)/2 (s >= 3).
    """
    if X < 2:
        return 0, 0
    phi = totients(X)
    count = 0
    weighted = 0
    for start in range(2, X + 1, _CHUNK):
        s = np.arange(start, min(start + _CHUNK, X + 1), dtype=np.int64)
        block = phi[start:start + len(s)]
        count += int(block.sum())
        weighted += int((s * block).sum())
    # s = 2 contributes the single vector (1, 1): x-sum 1, while s*phi(s) = 2.
    sum_x = 1 + (weighted - 2) // 2
    return count, sum_x


# -- lattice and height enumerations ----------------------------------------

def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def integer_range(I: IntervalQ, scale: int = 1) -> range:
    """Integers a with a/scale in I."""
    lo, hi = I.lo * scale, I.hi * scale
    a0 = _ceil_frac(lo)
    if a0 == lo and not I.closed_lo:
        a0 += 1
    a1 = _floor_frac(hi)
    if a1 == hi and not I.closed_hi:
        a1 -= 1
    return range(a0, a1 + 1)


def lattice_x_values(N: int, I: IntervalQ) -> Iterator[Fraction]:
    """All a/N in I, increasing."""
    if N < 1:
        raise ValueError("N must be positive")
    for a in integer_range(I, N):
        yield Fraction(a, N)


def _farey_succ(x: Fraction, N: int) -> Fraction:
    # smallest fraction with denominator <= N strictly above x
    best = None
    for q in range(1, N + 1):
        cand = Fraction(_floor_frac(x * q) + 1, q)
        if best is None or cand < best:
            best = cand
    return best


def _farey_between(N: int, lo: Fraction, hi: Fraction,
                   closed_lo: bool, closed_hi: bool) -> Iterator[Fraction]:
    """Fractions of F_N in the given sub-interval of [0, 1], increasing."""
    if lo.denominator <= N and closed_lo:
        first = lo
    else:
        first = _farey_succ(lo, N)
    if first > hi or (first == hi and not closed_hi):
        return
    yield first
    if first == 1:
        return
    second = _farey_succ(first, N)
    a, b = first.numerator, first.denominator
    c, d = second.numerator, second.denominator
    while True:
        cur = Fraction(c, d)
        if cur > hi or (cur == hi and not closed_hi):
            return
        yield cur
        if c == d:
            return
        k = (N + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b


def _height_nonneg(N: int, lo: Fraction, hi: Fraction,
                   closed_lo: bool, closed_hi: bool) -> Iterator[Fraction]:
    # 0 <= lo; values above 1 come from reciprocals of Farey fractions
    one = Fraction(1)
    if lo < one or (lo == one and closed_lo):
        top = min(hi, one)
        yield from _farey_between(N, lo, top, closed_lo, closed_hi if hi <= one else True)
    if hi > one:
        hi_c = min(hi, Fraction(N))
        ch = closed_hi if hi <= N else True
        if lo > one:
            lo_c, cl = lo, closed_lo
        else:
            lo_c, cl = one, False
        if lo_c > hi_c:
            return
        # x in (lo_c, hi_c]  <=>  1/x in [1/hi_c, 1/lo_c)
        recips = list(_farey_between(N, 1 / hi_c, 1 / lo_c, ch, cl))
        for u in reversed(recips):
            yield 1 / u


def rationals_of_height(N: int, I: IntervalQ) -> Iterator[Fraction]:
    """All rationals of height <= N in I, each once, increasing.

    Uses the Farey next-term recurrence on [0, 1] and the symmetries
    x -> 1/x, x -> -x (both preserve height) elsewhere.
    """
    if N < 1:
        raise ValueError("N must be positive")
    zero = Fraction(0)
    if I.lo < 0:
        n_hi = -I.lo
        if I.hi < 0:
            n_lo, n_cl = -I.hi, I.closed_hi
        else:
            n_lo, n_cl = zero, False
        if n_lo <= n_hi and not (n_lo == n_hi and not (n_cl and I.closed_lo)):
            neg = list(_height_nonneg(N, n_lo, n_hi, n_cl, I.closed_lo))
            for v in reversed(neg):
                yield -v
    if I.hi >= 0:
        if I.lo >= 0:
            lo, cl = I.lo, I.closed_lo
        else:
            lo, cl = zero, True
        if not (lo == I.hi and not (cl and I.closed_hi)):
            yield from _height_nonneg(N, lo, I.hi, cl, I.closed_hi)
