"""Jarnik's extremal convex chains and the Weak-Jarnik collinearity window."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, getcontext
from fractions import Fraction
from itertools import accumulate

from .curves import Curve, PointQ, PolyGraph, enumerate_lattice_points
from .exact import PrimVec, as_rational, enumerate_S, totients
from .linalg import det

# pi to 50 decimals, truncated and rounded up
PI_LO = Fraction(314159265358979323846264338327950288419716939937510, 10 ** 50)
PI_HI = PI_LO + Fraction(1, 10 ** 50)


def _jarnik_constant_lo() -> Fraction:
    # rational K_lo with K_lo^3 <= 27 / PI_HI^2 <= (3 pi^(-2/3))^3
    getcontext().prec = 70
    pi_hi = Decimal(PI_HI.numerator) / Decimal(PI_HI.denominator)
    approx = Decimal(3) / pi_hi ** (Decimal(2) / Decimal(3))
    k = Fraction(approx.quantize(Decimal(10) ** -50, rounding="ROUND_FLOOR"))
    while k ** 3 * PI_HI ** 2 > 27:
        k -= Fraction(1, 10 ** 50)
    return k


JARNIK_CONSTANT_LO = _jarnik_constant_lo()
JARNIK_CONSTANT = 3 * math.pi ** (-2 / 3)


@dataclass(frozen=True)
class ExtremalChain:
    N: int
    vertices: tuple
    steps: tuple

    @property
    def size(self) -> int:
        return len(self.vertices)


def _sum_x_through(N: int) -> int:
    """Largest integer X >= 1 whose S_X has x-coordinate sum <= N."""
    limit = int((math.pi ** 2 * N) ** (1 / 3)) * 2 + 8
    phi = totients(limit)
    total = 0
    X = 1
    for s in range(2, limit + 1):
        step = 1 if s == 2 else s * int(phi[s]) // 2
        if total + step > N:
            return X
        total += step
        X = s
    raise AssertionError("sieve bound too small")  # unreachable for N >= 1


def jarnik_extremal(N: int) -> ExtremalChain:
    """Convex chain through Lambda_N built from all of S_X, slope-sorted, from (0, 0)."""
    if N < 1:
        raise ValueError("N must be positive")
    X = _sum_x_through(N)
    steps = tuple(enumerate_S(X))
    xs = accumulate((v.x for v in steps), initial=0)
    ys = accumulate((v.y for v in steps), initial=0)
    vertices = tuple(PointQ(Fraction(a, N), Fraction(b, N)) for a, b in zip(xs, ys))
    return ExtremalChain(N, vertices, steps)


def mu_lower_bound(N: int) -> int:
    """Number of Lambda_N points on the extremal chain: a lower bound for mu(N)."""
    return jarnik_extremal(N).size


def jarnik_ratio(N: int) -> float:
    return mu_lower_bound(N) / N ** (2 / 3)


def jarnik_upper_check(N: int, slack) -> bool:
    """mu_lower_bound(N) <= (3 pi^(-2/3) + slack) N^(2/3), decided exactly.

    Uses a certified lower bound of the constant, so a True answer holds for
    the true constant as well. Both sides are cubed to stay rational.
    """
    mu = mu_lower_bound(N)
    c = JARNIK_CONSTANT_LO + as_rational(slack)
    return mu ** 3 <= c ** 3 * N ** 2


def check_chain(chain: ExtremalChain) -> list[str]:
    """Exact invariant check of a chain; returns a list of problems (empty if valid)."""
    problems = []
    steps = chain.steps
    if len(chain.vertices) != len(steps) + 1:
        problems.append("vertex count must be step count + 1")
    for a, b in zip(steps, steps[1:]):
        if a.y * b.x >= b.y * a.x:
            problems.append(f"slopes not strictly increasing at {a} -> {b}")
    for v in steps:
        if v.x <= 0 or v.y <= 0 or math.gcd(v.x, v.y) != 1:
            problems.append(f"step {v} is not a positive primitive vector")
    if len(set(steps)) != len(steps):
        problems.append("repeated step")
    for p in chain.vertices:
        if not (0 <= p.x <= 1 and 0 <= p.y <= 1):
            problems.append(f"vertex {p} outside the unit square")
        if (p.x * chain.N).denominator != 1 or (p.y * chain.N).denominator != 1:
            problems.append(f"vertex {p} not in Lambda_N")
    for (p, q), v in zip(zip(chain.vertices, chain.vertices[1:]), steps):
        if PrimVec(int((q.x - p.x) * chain.N), int((q.y - p.y) * chain.N)) != v:
            problems.append(f"step {v} does not match vertices {p}, {q}")
    return problems


# -- collinearity windows ----------------------------------------------------------

def _within(spread: Fraction, N: int, w: Fraction) -> bool:
    # spread < w * N^(-2/3)  <=>  spread^3 N^2 < w^3   (spread, w >= 0)
    return spread ** 3 * N ** 2 < w ** 3


def collinear(p: PointQ, q: PointQ, r: PointQ) -> bool:
    return det([[1, p.x, p.y], [1, q.x, q.y], [1, r.x, r.y]]) == 0


def collinearity_window_check(c: Curve, N: int, window_const) -> list[tuple]:
    """Non-collinear triples of lattice points whose x-spread is below w N^(-2/3)."""
    if not isinstance(c.kind, PolyGraph) or c.kind.degree < 2:
        raise ValueError("collinearity window check needs a polynomial graph of degree >= 2")
    w = as_rational(window_const)
    pts = enumerate_lattice_points(c, N)
    bad = []
    n = len(pts)
    for i in range(n):
        k_end = i
        while k_end + 1 < n and _within(pts[k_end + 1].x - pts[i].x, N, w):
            k_end += 1
        for j in range(i + 1, k_end + 1):
            for k in range(j + 1, k_end + 1):
                if not collinear(pts[i], pts[j], pts[k]):
                    bad.append((pts[i], pts[j], pts[k]))
    return bad


def _window_index(offset: Fraction, N: int, w: Fraction) -> int:
    # largest k >= 0 with k * (w/2) N^(-2/3) <= offset, i.e. k^3 w^3 <= 8 offset^3 N^2
    rhs = 8 * offset ** 3 * N ** 2
    k = int(2 * float(offset) * N ** (2 / 3) / float(w))
    while k > 0 and k ** 3 * w ** 3 > rhs:
        k -= 1
    while (k + 1) ** 3 * w ** 3 <= rhs:
        k += 1
    return k


def window_partition(c: Curve, N: int, window_const) -> list[list[PointQ]]:
    """Group lattice points into consecutive windows of width (w/2) N^(-2/3)."""
    w = as_rational(window_const)
    if w <= 0:
        raise ValueError("window constant must be positive")
    groups: dict[int, list[PointQ]] = {}
    for p in enumerate_lattice_points(c, N):
        groups.setdefault(_window_index(p.x - c.domain.lo, N, w), []).append(p)
    return [groups[k] for k in sorted(groups)]


def window_count_bound(N: int, window_const, length=1) -> int:
    """ceil(length * (2/w) N^(2/3)) + 1, computed exactly."""
    w = as_rational(window_const)
    # smallest m with m >= 2 length N^(2/3) / w  <=>  (m w)^3 >= 8 length^3 N^2
    target = 8 * as_rational(length) ** 3 * N ** 2
    m = max(0, int(2 * float(length) * N ** (2 / 3) / float(w)) - 1)
    while (m * w) ** 3 < target:
        m += 1
    return m + 1
