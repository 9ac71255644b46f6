"""
Convex chains through a fine lattice
====================================

Builds the extremal convex chain for a few N, checks its invariants exactly,
and prints how the number of vertices tracks 3 pi^(-2/3) N^(2/3).
"""

from fractions import Fraction

from detlab import (JARNIK_CONSTANT, check_chain, collinearity_window_check,
                    jarnik_extremal, jarnik_upper_check, poly_curve)

chain = jarnik_extremal(12)
print("steps:", [tuple(s) for s in chain.steps])
print("vertices:", [(str(p.x), str(p.y)) for p in chain.vertices])
assert check_chain(chain) == []

for N in (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6):
    ch = jarnik_extremal(N)
    print(f"N={N:>8}  vertices={ch.size:>6}  ratio={ch.size / N ** (2 / 3):.4f}"
          f"  (constant {JARNIK_CONSTANT:.4f})  upper ok: {jarnik_upper_check(N, Fraction(1, 10))}")

###############################################################################
# Close lattice points on a parabola are collinear
parabola = poly_curve([0, 0, 1])
for w in (Fraction(1, 10), Fraction(1), Fraction(100)):
    bad = collinearity_window_check(parabola, 400, w)
    print(f"window {w}: {len(bad)} non-collinear triples")
