"""Plane curve models and exact enumeration of their rational points.

Three families are supported:

* ``PolyGraph``: y = c0 + c1 x + ... + ck x^k with rational coefficients;
* ``Implicit``: the zero set of a bivariate rational polynomial F(x, y);
* ``PowGraph``: y = base**x for an integer base >= 2.

Enumeration is fiber-by-fiber over x in the curve's domain, so implicit
curves are cut by vertical lines; pieces better written as x = g(y) must be
declared with the axes swapped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Union

import numpy as np
from sympy import divisors

from .exact import (IntervalQ, as_rational, closed, height, integer_range,
                    lattice_x_values, rational_str, rationals_of_height)


class PointQ(NamedTuple):
    x: Fraction
    y: Fraction

    def __str__(self):
        return f"({rational_str(self.x)}, {rational_str(self.y)})"


def point(x, y) -> PointQ:
    return PointQ(as_rational(x), as_rational(y))


class DegenerateFiberError(ValueError):
    """F(x0, y) vanishes identically: the vertical line x = x0 lies on the curve."""


# -- bivariate polynomials ---------------------------------------------------

@dataclass(frozen=True)
class BivariatePoly:
    """Sparse polynomial sum c_ij x^i y^j; ``terms`` is sorted, zero-free."""

    terms: tuple = ()

    @classmethod
    def from_dict(cls, coeffs: dict) -> "BivariatePoly":
        items = sorted((tuple(k), as_rational(v)) for k, v in coeffs.items() if v != 0)
        return cls(tuple(items))

    @classmethod
    def constant(cls, c) -> "BivariatePoly":
        return cls.from_dict({(0, 0): c})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = self.as_dict()
        for k, v in other.terms:
            out[k] = out.get(k, 0) + v
        return BivariatePoly.from_dict(out)

    def __neg__(self):
        return BivariatePoly(tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out: dict = {}
        for (i1, j1), a in self.terms:
            for (i2, j2), b in other.terms:
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return BivariatePoly.from_dict(out)

    def __pow__(self, n: int):
        result = BivariatePoly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    @property
    def total_degree(self) -> int:
        return max((i + j for (i, j), _ in self.terms), default=0)

    @property
    def degree_y(self) -> int:
        return max((j for (_, j), _ in self.terms), default=0)

    def __call__(self, x, y) -> Fraction:
        return sum((c * x ** i * y ** j for (i, j), c in self.terms), Fraction(0))

    def fiber(self, x) -> list[Fraction]:
        """Coefficients (constant first) of the univariate polynomial F(x, .)."""
        coeffs = [Fraction(0)] * (self.degree_y + 1)
        for (i, j), c in self.terms:
            coeffs[j] += c * x ** i
        return coeffs


# -- curve kinds ---------------------------------------------------------------

def _strip(coeffs) -> tuple:
    coeffs = [as_rational(c) for c in coeffs] or [Fraction(0)]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class PolyGraph:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class Implicit:
    poly: BivariatePoly

    def __post_init__(self):
        if self.poly.is_zero():
            raise ValueError("implicit curve needs a nonzero polynomial")
        if self.poly.total_degree < 1:
            raise ValueError("implicit curve needs total degree >= 1")


@dataclass(frozen=True)
class PowGraph:
    base: int

    def __post_init__(self):
        if int(self.base) != self.base or self.base < 2:
            raise ValueError(f"PowGraph base must be an integer >= 2, got {self.base}")


CurveKind = Union[PolyGraph, Implicit, PowGraph]


@dataclass(frozen=True)
class Curve:
    kind: CurveKind
    domain: IntervalQ = field(default_factory=lambda: closed(0, 1))

    def contains(self, p: PointQ) -> bool:
        """Exact membership: x in the domain and the defining equation holds."""
        if p.x not in self.domain:
            return False
        if isinstance(self.kind, Implicit):
            return self.kind.poly(p.x, p.y) == 0
        return eval_exact(self, p.x) == p.y

    def __str__(self):
        from .parsing import format_curve
        return format_curve(self)


def poly_curve(coeffs: Iterable, lo=0, hi=1) -> Curve:
    return Curve(PolyGraph(tuple(coeffs)), closed(lo, hi))


def pow_curve(base: int, lo=0, hi=1) -> Curve:
    return Curve(PowGraph(base), closed(lo, hi))


def implicit_curve(coeffs: dict, lo=0, hi=1) -> Curve:
    return Curve(Implicit(BivariatePoly.from_dict(coeffs)), closed(lo, hi))


# -- exact evaluation -----------------------------------------------------------

def integer_root(n: int, k: int) -> int | None:
    """The integer t >= 0 with t**k == n, or None."""
    if n < 0:
        return None
    if n < 2 or k == 1:
        return n
    t = round(n ** (1.0 / k)) if n.bit_length() < 1000 else None
    if t is None:
        lo, hi = 0, 1 << (n.bit_length() // k + 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid ** k < n:
                lo = mid + 1
            else:
                hi = mid
        t = lo
    for cand in (t - 1, t, t + 1):
        if cand >= 0 and cand ** k == n:
            return cand
    return None


def pow_rational(base: int, x: Fraction) -> Fraction | None:
    """base**x when it is rational, else None.

    With x = p/q in lowest terms, t**q = base**p has an integer solution iff
    base itself is a perfect q-th power (compare prime valuations:
    q*v(t) = p*v(base) with gcd(p, q) = 1 forces q | v(base)).
    """
    p, q = x.numerator, x.denominator
    s = integer_root(base, q)
    if s is None:
        return None
    return Fraction(s) ** p


def eval_exact(c: Curve, x) -> Fraction | None:
    """y-value of a graph curve at x; None when the value is irrational (PowGraph)."""
    x = as_rational(x)
    if x not in c.domain:
        raise ValueError(f"x = {x} lies outside the domain {c.domain}")
    kind = c.kind
    if isinstance(kind, PolyGraph):
        acc = Fraction(0)
        for coef in reversed(kind.coeffs):
            acc = acc * x + coef
        return acc
    if isinstance(kind, PowGraph):
        return pow_rational(kind.base, x)
    raise TypeError("eval_exact is defined for PolyGraph and PowGraph curves only")


def _lcm_all(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


def rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """Distinct rational roots of sum coeffs[j] y^j (not identically zero), sorted."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial has every value as a root")
    roots = set()
    if coeffs[0] == 0:
        roots.add(Fraction(0))
        while coeffs[0] == 0:
            coeffs.pop(0)
    if len(coeffs) == 1:
        return sorted(roots)
    den = _lcm_all(c.denominator for c in coeffs)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    ints = [a // g for a in ints]
    a0, an = abs(ints[0]), abs(ints[-1])
    lead_divs = divisors(an)
    for p in divisors(a0):
        for q in lead_divs:
            if math.gcd(p, q) != 1:
                continue
            for sign in (1, -1):
                cand = Fraction(sign * p, q)
                if _is_root(ints, cand):
                    roots.add(cand)
    return sorted(roots)


def _is_root(ints: list[int], r: Fraction) -> bool:
    p, q = r.numerator, r.denominator
    n = len(ints) - 1
    acc = 0
    for j, a in enumerate(ints):
        acc += a * p ** j * q ** (n - j)
    return acc == 0


def fibers_implicit(F: BivariatePoly, x) -> list[Fraction]:
    """All rational y with F(x, y) = 0, increasing."""
    coeffs = F.fiber(as_rational(x))
    if all(c == 0 for c in coeffs):
        raise DegenerateFiberError(f"F({x}, y) vanishes identically")
    return rational_roots(coeffs)


# -- enumeration ------------------------------------------------------------------

def _int_poly(coeffs: tuple) -> tuple[list[int], int]:
    den = _lcm_all(c.denominator for c in coeffs)
    return [int(c * den) for c in coeffs], den


def _poly_lattice(c: Curve, N: int) -> list[PointQ]:
    ints, D = _int_poly(c.kind.coeffs)
    k = len(ints) - 1
    modulus = D * N ** k // N if k >= 1 else None
    out = []
    for a in integer_range(c.domain, N):
        # y = A / (D N^k) with A = sum a_i a^i N^(k-i)
        A = ints[k]
        for i in range(k - 1, -1, -1):
            A = A * a + ints[i] * N ** (k - i)
        if k == 0:
            y = Fraction(ints[0], D)
            if (y * N).denominator != 1:
                continue
        else:
            if A % modulus:
                continue
            y = Fraction(A, D * N ** k)
        out.append(PointQ(Fraction(a, N), y))
    return out


def _pow_candidates(base: int, qmax: int):
    """(q, s) with s**q == base for q <= qmax."""
    q = 1
    while q <= qmax and 2 ** q <= base:
        s = integer_root(base, q)
        if s is not None:
            yield q, s
        q += 1


def _pow_points(c: Curve, accept) -> list[PointQ]:
    # x must be p/q with base a perfect q-th power; y = s**p
    base = c.kind.base
    out = []
    for q, s in _pow_candidates(base, base.bit_length()):
        for p in integer_range(c.domain, q):
            if math.gcd(p, q) != 1:
                continue
            x = Fraction(p, q)
            y = Fraction(s) ** p
            pt = accept(x, y)
            if pt is not None:
                out.append(pt)
    out.sort()
    return out


def _implicit_points(c: Curve, xs, keep) -> list[PointQ]:
    out = []
    for x in xs:
        for y in fibers_implicit(c.kind.poly, x):
            if keep(y):
                out.append(PointQ(x, y))
    return out


def enumerate_lattice_points(c: Curve, N: int) -> list[PointQ]:
    """Gamma intersected with (1/N)Z^2, x restricted to the domain, sorted by x."""
    if N < 1:
        raise ValueError("N must be positive")
    kind = c.kind
    if isinstance(kind, PolyGraph):
        return _poly_lattice(c, N)
    if isinstance(kind, PowGraph):
        def accept(x, y):
            if N % x.denominator == 0 and (y * N).denominator == 1:
                return PointQ(x, y)
            return None
        return _pow_points(c, accept)
    return _implicit_points(c, lattice_x_values(N, c.domain),
                            lambda y: (y * N).denominator == 1)


_INT64_SAFE = 1 << 62


def iroot_floor(n: int, k: int) -> int:
    """Largest t >= 0 with t**k <= n."""
    if n < 2 or k == 1:
        return max(n, 0)
    t = int(n ** (1.0 / k)) if n.bit_length() < 1000 else 1 << (n.bit_length() // k + 1)
    while t ** k > n:
        t -= 1
    while (t + 1) ** k <= n:
        t += 1
    return t


def _max_denominator(ints: list[int], N: int) -> int:
    # With x = p/q and A = sum a_i p^i q^(k-i), every prime of q satisfies
    # v(gcd(A, q^k)) <= k v(a_k), so den(y) >= q^k / |a_k|^k; den(y) <= N
    # then needs q^k <= |a_k|^k N.
    k = len(ints) - 1
    if k == 0:
        return N
    return min(N, iroot_floor(abs(ints[k]) ** k * N, k))


def _poly_height_numpy(c: Curve, N: int, ints: list[int], D: int) -> list[PointQ]:
    k = len(ints) - 1
    out = []
    for q in range(1, _max_denominator(ints, N) + 1):
        r = integer_range(c.domain, q)
        p0, p1 = max(r.start, -N), min(r.stop - 1, N)
        if p0 > p1:
            continue
        ps = np.arange(p0, p1 + 1, dtype=np.int64)
        ps = ps[np.gcd(ps, q) == 1]
        if ps.size == 0:
            continue
        A = np.full(ps.shape, ints[k], dtype=np.int64)
        for i in range(k - 1, -1, -1):
            A = A * ps + ints[i] * q ** (k - i)
        den = D * q ** k
        g = np.gcd(A, den)
        num = A // g
        hit = (np.abs(num) <= N) & (den // g <= N)
        for p in ps[hit].tolist():
            x = Fraction(p, q)
            out.append(PointQ(x, eval_exact(c, x)))
    out.sort()
    return out


def enumerate_height_points(c: Curve, N: int) -> list[PointQ]:
    """Gamma(Q, N): curve points with H(x), H(y) <= N, x in the domain, sorted."""
    if N < 1:
        raise ValueError("N must be positive")
    kind = c.kind
    if isinstance(kind, PolyGraph):
        ints, D = _int_poly(kind.coeffs)
        k = len(ints) - 1
        if (sum(abs(a) for a in ints) + D) * N ** max(k, 1) < _INT64_SAFE:
            return _poly_height_numpy(c, N, ints, D)
        out = []
        qmax = _max_denominator(ints, N)
        for x in rationals_of_height(N, c.domain):
            if x.denominator > qmax:
                continue
            y = eval_exact(c, x)
            if height(y) <= N:
                out.append(PointQ(x, y))
        return out
    if isinstance(kind, PowGraph):
        def accept(x, y):
            if height(x) <= N and height(y) <= N:
                return PointQ(x, y)
            return None
        return _pow_points(_clip_pow_domain(c, N), accept)
    return _implicit_points(c, rationals_of_height(N, c.domain),
                            lambda y: height(y) <= N)


def _clip_pow_domain(c: Curve, N: int) -> Curve:
    # |x| <= N for height reasons and base**|x| <= N, so |x| <= log2(N) + 1 suffices
    bound = Fraction(N.bit_length() + 1)
    lo, hi = max(c.domain.lo, -bound), min(c.domain.hi, bound)
    if lo > hi:
        lo = hi = bound + 1
        return Curve(c.kind, IntervalQ(lo, lo + 1, False, False))
    cl = c.domain.closed_lo if lo == c.domain.lo else True
    ch = c.domain.closed_hi if hi == c.domain.hi else True
    if lo == hi and not (cl and ch):
        return Curve(c.kind, IntervalQ(bound + 1, bound + 2, False, False))
    return Curve(c.kind, IntervalQ(lo, hi, cl, ch))


# -- derivative bounds ------------------------------------------------------------

class DerivativeBound(NamedTuple):
    order: int
    bound: Fraction


def _round_up(value: float) -> Fraction:
    # float upper bound widened by a relative margin well above rounding error
    return Fraction(value) * Fraction(1 + 2 ** -30) + Fraction(1, 2 ** 60)


def derivative_bounds(c: Curve, max_order: int) -> list[DerivativeBound]:
    """Upper bounds for sup over the domain of |f^(n)|, n = 0..max_order."""
    kind = c.kind
    B = max(abs(c.domain.lo), abs(c.domain.hi))
    out = []
    if isinstance(kind, PolyGraph):
        for n in range(max_order + 1):
            total = Fraction(0)
            for i, coef in enumerate(kind.coeffs):
                if i >= n:
                    total += abs(coef) * math.perm(i, n) * B ** (i - n)
            out.append(DerivativeBound(n, total))
        return out
    if isinstance(kind, PowGraph):
        ln_b = math.log(kind.base)
        top = float(c.domain.hi)
        for n in range(max_order + 1):
            out.append(DerivativeBound(n, _round_up(ln_b ** n * kind.base ** top)))
        return out
    raise TypeError("derivative bounds are only available for graph curves")
