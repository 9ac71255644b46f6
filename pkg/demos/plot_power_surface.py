"""
Rational points on z = x^y
==========================

For 1 <= x, y <= 2 counts the rational triples (x, y, x^y) whose coordinates
all have height at most N. The surface is transcendental, yet it contains the
lines y = 1 and x = 1, so the count grows like N^2 rather than slower than
any power. Almost every point sits on one of those two lines.
"""

from collections import Counter
from fractions import Fraction

from detlab import closed, fit_pairs, height, integer_root, rationals_of_height


def power(x, y):
    # x^y for rationals x > 0, y; None when irrational
    p, q = y.numerator, y.denominator
    a, b = integer_root(x.numerator, q), integer_root(x.denominator, q)
    if a is None or b is None:
        return None
    return Fraction(a, b) ** p


def surface_points(N):
    xs = list(rationals_of_height(N, closed(1, 2)))
    out = []
    for y in xs:
        for x in xs:
            z = power(x, y)
            if z is not None and height(z) <= N:
                out.append((x, y, z))
    return out


ns = [8, 16, 32, 64, 128]
counts = []
for N in ns:
    pts = surface_points(N)
    counts.append(len(pts))
    by_y = Counter(y for _, y, _ in pts)
    on_x1 = sum(1 for x, y, _ in pts if x == 1 and y != 1)
    rest = len(pts) - by_y[1] - on_x1
    print(f"N={N:>4}  points={len(pts):>6}  y=1: {by_y[1]:>5}  x=1: {on_x1:>5}  elsewhere: {rest}")

print("log-log slope:", round(fit_pairs(ns, counts).slope, 3))
