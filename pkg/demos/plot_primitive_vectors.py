"""
Primitive vectors in a triangle
===============================

Counts the primitive vectors (x, y) with positive coordinates and x + y <= X
and compares the count and the x-sum with 3X^2/pi^2 and X^3/pi^2.
"""

import math

from detlab import enumerate_S, s_count_and_sum

# the small cases by hand
print(enumerate_S(5))

for X in (10, 100, 1000, 10 ** 4, 10 ** 5):
    count, sum_x = s_count_and_sum(X)
    print(f"X={X:>6}  |S_X|={count:>11}  ratio={count * math.pi ** 2 / (3 * X * X):.5f}"
          f"  sum ratio={sum_x * math.pi ** 2 / X ** 3:.5f}")
