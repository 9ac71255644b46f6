"""Exact linear algebra for the determinant method.

Matrices hold Fractions. Rank, determinant and nullspace computations clear
denominators row- or column-wise and run fraction-free (Bareiss) elimination
over the integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .curves import Curve, DerivativeBound, PointQ
from .exact import as_rational


# -- matrices -------------------------------------------------------------------

@dataclass(frozen=True)
class QMatrix:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(as_rational(v) for v in row) for row in self.entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, idx):
        r, c = idx
        return self.entries[r][c]

    def column(self, c: int) -> tuple:
        return tuple(row[c] for row in self.entries)

    def transpose(self) -> "QMatrix":
        return QMatrix(tuple(zip(*self.entries)))

    def det(self) -> Fraction:
        return det(self.entries)

    def rank(self) -> int:
        return rank(self.entries)


def _lcm_den(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v.denominator)
    return out


def _integer_rows(rows) -> list[list[int]]:
    # scaling a row by a nonzero constant leaves rank and row space unchanged
    out = []
    for row in rows:
        m = _lcm_den(row)
        out.append([int(v * m) for v in row])
    return out


def bareiss_det(m: list[list[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    rows = [[as_rational(v) for v in r] for r in rows]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    scale = 1
    ints = []
    for row in rows:
        m = _lcm_den(row)
        scale *= m
        ints.append([int(v * m) for v in row])
    return Fraction(bareiss_det(ints), scale)


def _echelon(ints: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (pivot rows, pivot columns)."""
    a = [list(r) for r in ints]
    pivots: list[int] = []
    r = 0
    prev = 1
    nrows = len(a)
    for c in range(ncols):
        if r == nrows:
            break
        sel = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if sel is None:
            continue
        a[r], a[sel] = a[sel], a[r]
        pivot = a[r][c]
        row_r = a[r]
        for i in range(r + 1, nrows):
            row_i = a[i]
            aic = row_i[c]
            for j in range(c + 1, ncols):
                row_i[j] = (row_i[j] * pivot - aic * row_r[j]) // prev
            row_i[c] = 0
        prev = pivot
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    rows = [[as_rational(v) for v in r] for r in rows]
    if not rows:
        return 0
    _, pivots = _echelon(_integer_rows(rows), len(rows[0]))
    return len(pivots)


def nullspace_vector(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Fraction] | None:
    """A nonzero v with rows @ v = 0, or None when the nullspace is trivial.

    Pivots are chosen left to right; v is the basis vector attached to the
    first free column, so the result is deterministic.
    """
    rows = [[as_rational(v) for v in r] for r in rows]
    if not rows:
        v = [Fraction(0)] * ncols
        if ncols:
            v[0] = Fraction(1)
            return v
        return None
    ech, pivots = _echelon(_integer_rows(rows), ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    if not free:
        return None
    f = free[0]
    v = [Fraction(0)] * ncols
    v[f] = Fraction(1)
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        s = sum((ech[r][j] * v[j] for j in range(c + 1, ncols) if v[j]), Fraction(0))
        v[c] = -s / ech[r][c]
    return v


# -- Vandermonde and monomial matrices -------------------------------------------

def vandermonde(xs: Sequence) -> Fraction:
    """Product over i < j of (x_j - x_i)."""
    xs = [as_rational(x) for x in xs]
    out = Fraction(1)
    for j in range(len(xs)):
        for i in range(j):
            out *= xs[j] - xs[i]
    return out


def monomials(d: int, e: int) -> list[tuple[int, int]]:
    """Bi-indices (i, j) of x^i y^j, i < d, j < e, with i varying fastest.

    For (2, 2) this is 1, x, y, xy.
    """
    return [(i, j) for j in range(e) for i in range(d)]


def monomial_matrix(pts: Sequence[PointQ], d: int, e: int) -> QMatrix:
    """de x len(pts) matrix [x_k^i y_k^j]; rows follow ``monomials``, columns the points."""
    if d < 1 or e < 1:
        raise ValueError("d and e must be positive")
    mons = monomials(d, e)
    rows = tuple(tuple(p.x ** i * p.y ** j for p in pts) for i, j in mons)
    if not pts:
        rows = tuple(() for _ in mons)
    return QMatrix(rows)


def _point_rows(pts: Sequence[PointQ], d: int, e: int) -> list[list[Fraction]]:
    # one row per point: the transpose of the monomial matrix
    mons = monomials(d, e)
    return [[p.x ** i * p.y ** j for i, j in mons] for p in pts]


def de_determinant(pts: Sequence[PointQ], d: int, e: int) -> Fraction:
    if len(pts) != d * e:
        raise ValueError(f"need exactly d*e = {d * e} points, got {len(pts)}")
    # det(M) = det(M^T); point rows clear denominators point by point
    return det(_point_rows(pts, d, e))


def lies_on_de_curve(pts: Sequence[PointQ], d: int, e: int) -> bool:
    """True iff some nonzero P with deg_x P < d, deg_y P < e vanishes on every point."""
    if len(pts) < d * e:
        return True
    return rank(_point_rows(pts, d, e)) < d * e


# -- (d, e)-curves -----------------------------------------------------------------

@dataclass(frozen=True)
class DECurve:
    """P(x, y) = sum c[i][j] x^i y^j with i < d, j < e.

    The first nonzero coefficient in row-major order must equal 1; use
    ``normalized`` to rescale an arbitrary nonzero grid.
    """

    d: int
    e: int
    coeffs: tuple

    def __post_init__(self):
        grid = tuple(tuple(as_rational(v) for v in row) for row in self.coeffs)
        if len(grid) != self.d or any(len(row) != self.e for row in grid):
            raise ValueError(f"coefficient grid must be {self.d}x{self.e}")
        lead = next((v for row in grid for v in row if v != 0), None)
        if lead is None:
            raise ValueError("a (d,e)-curve needs a nonzero polynomial")
        if lead != 1:
            raise ValueError(f"first nonzero coefficient must be 1, got {lead}")
        object.__setattr__(self, "coeffs", grid)

    @classmethod
    def normalized(cls, d: int, e: int, grid) -> "DECurve":
        lead = next((v for row in grid for v in row if v != 0), None)
        if lead is None:
            raise ValueError("a (d,e)-curve needs a nonzero polynomial")
        return cls(d, e, tuple(tuple(as_rational(v) / lead for v in row) for row in grid))

    @classmethod
    def from_vector(cls, d: int, e: int, vec: Sequence) -> "DECurve":
        """Curve from coefficients listed in ``monomials(d, e)`` order."""
        grid = [[Fraction(0)] * e for _ in range(d)]
        for (i, j), v in zip(monomials(d, e), vec):
            grid[i][j] = v
        return cls.normalized(d, e, grid)

    def __call__(self, x, y) -> Fraction:
        total = Fraction(0)
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                if c:
                    total += c * x ** i * y ** j
        return total

    def vanishes_at(self, p: PointQ) -> bool:
        return self(p.x, p.y) == 0


def interpolate_de_curve(pts: Sequence[PointQ], d: int, e: int) -> DECurve | None:
    """A normalized (d,e)-curve through every point, or None if none exists."""
    vec = nullspace_vector(_point_rows(pts, d, e), d * e)
    if vec is None:
        return None
    return DECurve.from_vector(d, e, vec)


def select_independent(pts: Sequence[PointQ], d: int, e: int) -> list[PointQ] | None:
    """de points (greedy, input order) with nonzero determinant.

    Returns None when all points lie on one (d,e)-curve.
    """
    n = d * e
    basis: list[tuple[int, list[Fraction]]] = []
    chosen: list[PointQ] = []
    for p in pts:
        row = _point_rows([p], d, e)[0]
        for piv, brow in basis:
            if row[piv]:
                f = row[piv] / brow[piv]
                row = [a - f * b for a, b in zip(row, brow)]
        piv = next((k for k, v in enumerate(row) if v), None)
        if piv is None:
            continue
        basis.append((piv, row))
        chosen.append(p)
        if len(chosen) == n:
            return chosen
    return None


def denominator_bound(d: int, e: int, N: int, mode: str) -> int:
    """N^(de(d+e-2)/2) for lattice points, N^(de(d+e-2)) for height-bounded points."""
    if N < 1:
        raise ValueError("N must be positive")
    if mode == "lattice":
        return N ** (d * e * (d + e - 2) // 2)
    if mode == "height":
        return N ** (d * e * (d + e - 2))
    raise ValueError(f"unknown mode {mode!r}")


# -- mean value checks --------------------------------------------------------------

def schwarz_poly_identity_check(coeffs: Sequence, nodes: Sequence) -> bool:
    """det[1, x, ..., x^(n-1), f(x)] over n+1 nodes equals a_n * V(nodes).

    ``coeffs`` lists f's coefficients from the constant term up; deg f <= n.
    """
    coeffs = [as_rational(c) for c in coeffs]
    nodes = [as_rational(x) for x in nodes]
    if len(set(nodes)) != len(nodes):
        raise ValueError("nodes must be distinct")
    n = len(nodes) - 1
    if n < 0:
        raise ValueError("need at least one node")
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) - 1 > n:
        raise ValueError(f"degree {len(coeffs) - 1} polynomial needs {len(coeffs)} nodes")

    def f(x):
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    lead = coeffs[n] if n < len(coeffs) else Fraction(0)
    mat = [[x ** k for k in range(n)] + [f(x)] for x in nodes]
    return det(mat) == lead * vandermonde(nodes)


def _cauchy(a: list[Fraction], b: list[Fraction], length: int) -> list[Fraction]:
    out = [Fraction(0)] * length
    for i, u in enumerate(a[:length]):
        if u:
            for j, v in enumerate(b[:length - i]):
                out[i + j] += u * v
    return out


def taylor_bound_table(bounds: Sequence[DerivativeBound], xmax: Fraction,
                       d: int, e: int) -> list[list[Fraction]]:
    """Rows over (i, j): bounds for sup |g_ij^(m)| / m!, m < de, g_ij = x^i f^j.

    Built from the Leibniz rule in Taylor-coefficient form: the bound sequence
    of a product is the Cauchy product of the factors' bound sequences.
    """
    n = d * e
    table = {b.order: as_rational(b.bound) for b in bounds}
    missing = [m for m in range(n) if m not in table]
    if missing:
        raise ValueError(f"derivative bound missing for order(s) {missing}")
    f_seq = [table[m] / math.factorial(m) for m in range(n)]
    x_seq = [abs(as_rational(xmax)), Fraction(1)] + [Fraction(0)] * (n - 2)
    x_seq = x_seq[:n]
    one = [Fraction(1)] + [Fraction(0)] * (n - 1)
    rows = []
    for i, j in monomials(d, e):
        seq = one
        for _ in range(i):
            seq = _cauchy(seq, x_seq, n)
        for _ in range(j):
            seq = _cauchy(seq, f_seq, n)
        rows.append(seq)
    return rows


def schwarz_bound_check(c: Curve, bounds: Sequence[DerivativeBound],
                        pts: Sequence[PointQ], d: int, e: int) -> bool:
    """Sanity check |Delta| <= C * w^(de(de-1)/2) for de points on a graph curve.

    C is the Hadamard bound on det[g_ij^(m)(tau)/m!] from the bound table and
    w the width of the window holding the x-coordinates. Compared squared so
    everything stays rational.
    """
    n = d * e
    if len(pts) != n:
        raise ValueError(f"need exactly d*e = {n} points")
    xs = [p.x for p in pts]
    width = max(xs) - min(xs)
    delta = de_determinant(pts, d, e)
    if delta == 0:
        return True
    xmax = max(abs(c.domain.lo), abs(c.domain.hi))
    rows = taylor_bound_table(bounds, xmax, d, e)
    c_sq = Fraction(1)
    for row in rows:
        c_sq *= sum(v * v for v in row)
    return delta * delta <= c_sq * width ** (n * (n - 1))
