import random
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from detlab.curves import PointQ, derivative_bounds, poly_curve, pow_curve
from detlab.linalg import (DECurve, QMatrix, bareiss_det, de_determinant, denominator_bound, det,
                           interpolate_de_curve, lies_on_de_curve, monomial_matrix, monomials,
                           nullspace_vector, rank, schwarz_bound_check,
                           schwarz_poly_identity_check, select_independent, vandermonde)

from oracles import gauss_rank, leibniz_det


def P(x, y):
    return PointQ(F(x), F(y))


SQUARE = [P(0, 0), P(1, 0), P(0, 1), P(1, 1)]
HYPER = [P(k, F(1, k)) for k in range(1, 7)]


def random_points(rng, n, num=5, den=4):
    return [P(F(rng.randint(-num, num), rng.randint(1, den)),
              F(rng.randint(-num, num), rng.randint(1, den))) for _ in range(n)]


# -- basic determinants ------------------------------------------------------------

def test_vandermonde_examples():
    assert vandermonde([0, 1]) == 1
    assert vandermonde([0, 1, 2]) == 2
    assert vandermonde([F(1, 3), F(1, 3), 5]) == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_vandermonde_against_elimination(n):
    rng = random.Random(n)
    xs = [F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]
    mat = [[x ** k for k in range(n)] for x in xs]
    assert vandermonde(xs) == det(mat)
    if n <= 6:
        assert vandermonde(xs) == leibniz_det(mat)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(
    st.lists(st.fractions(-5, 5, max_denominator=6), min_size=n, max_size=n),
    min_size=n, max_size=n)))
def test_det_matches_leibniz(m):
    assert det(m) == leibniz_det(m)


def test_bareiss_det_integer():
    assert bareiss_det([[0, 2], [3, 4]]) == -6
    assert bareiss_det([[1, 2], [2, 4]]) == 0
    assert bareiss_det([]) == 1


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.integers(1, 6), st.randoms())
def test_rank_and_nullspace(nrows, ncols, rnd):
    rows = [[F(rnd.randint(-3, 3), rnd.randint(1, 3)) for _ in range(ncols)] for _ in range(nrows)]
    if rnd.random() < 0.5 and nrows > 1:
        rows[-1] = [a + 2 * b for a, b in zip(rows[0], rows[1 % nrows])]
    assert rank(rows) == gauss_rank(rows)
    v = nullspace_vector(rows, ncols)
    if gauss_rank(rows) == ncols:
        assert v is None
    else:
        assert any(v)
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def test_qmatrix():
    m = QMatrix(((1, 2), (3, 4)))
    assert (m.rows, m.cols) == (2, 2)
    assert m.det() == -2 and m.rank() == 2
    assert m.transpose().entries == ((1, 3), (2, 4))
    with pytest.raises(ValueError):
        QMatrix(((1, 2), (3,)))


# -- monomial matrix and vanishing determinants -----------------------------------------------------

def test_monomial_matrix_columns():
    assert monomial_matrix([P(0, 0)], 2, 2).column(0) == (1, 0, 0, 0)
    assert monomial_matrix([P(1, 1)], 2, 2).column(0) == (1, 1, 1, 1)
    assert monomial_matrix([P(2, 3)], 2, 2).column(0) == (1, 2, 3, 6)
    assert monomials(2, 3) == [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)]


def test_de_determinant_examples():
    m = monomial_matrix(SQUARE, 2, 2).entries
    assert leibniz_det(m) == 1
    assert de_determinant(SQUARE, 2, 2) == 1
    assert de_determinant(HYPER[:4], 2, 2) == 0
    assert de_determinant([P(1, 2), P(3, 4), P(1, 2), P(0, 5)], 2, 2) == 0
    with pytest.raises(ValueError):
        de_determinant(SQUARE[:3], 2, 2)


def test_de_determinant_equals_monomial_matrix_det():
    rng = random.Random(7)
    for d, e in [(2, 2), (2, 3), (3, 2)]:
        pts = random_points(rng, d * e)
        assert de_determinant(pts, d, e) == leibniz_det(monomial_matrix(pts, d, e).entries)


def test_lies_on_de_curve_examples():
    rng = random.Random(3)
    for _ in range(20):
        assert lies_on_de_curve(random_points(rng, 3), 2, 2)
    assert not lies_on_de_curve(SQUARE, 2, 2)
    assert lies_on_de_curve(HYPER[:5], 2, 2)


@pytest.mark.parametrize("d, e", [(2, 2), (2, 3), (3, 3)])
def test_zero_determinant_iff_common_curve_fuzz(d, e):
    rng = random.Random(1000 * d + e)
    mismatches = 0
    for trial in range(300):
        # every third instance repeats a point, forcing Delta = 0
        pts = random_points(rng, d * e, num=3, den=3)
        if trial % 3 == 0:
            pts[-1] = pts[0]
        delta_zero = de_determinant(pts, d, e) == 0
        mismatches += delta_zero != lies_on_de_curve(pts, d, e)
        mismatches += delta_zero != (gauss_rank(monomial_matrix(pts, d, e).entries) < d * e)
    assert mismatches == 0


# -- interpolation and selection ---------------------------------------------------------

def test_interpolate_line():
    cur = interpolate_de_curve([P(0, 0), P(1, 1), P(2, 2)], 2, 2)
    assert cur is not None
    assert cur.coeffs == ((0, 1), (-1, 0))  # y - x, normalized
    assert all(cur.vanishes_at(p) for p in [P(5, 5), P(F(1, 3), F(1, 3))])


def test_interpolate_examples():
    assert interpolate_de_curve(SQUARE, 2, 2) is None
    cur = interpolate_de_curve([P(F(1, 2), F(1, 3))], 2, 2)
    assert cur.vanishes_at(P(F(1, 2), F(1, 3)))
    hyp = interpolate_de_curve(HYPER, 2, 2)
    assert hyp.coeffs == ((1, 0), (0, -1))  # 1 - xy


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([(1, 2), (2, 1), (2, 2), (2, 3), (3, 3)]), st.integers(0, 10), st.randoms())
def test_interpolation_soundness(de, n, rnd):
    d, e = de
    pts = [P(F(rnd.randint(-4, 4), rnd.randint(1, 3)), F(rnd.randint(-4, 4), rnd.randint(1, 3)))
           for _ in range(n)]
    cur = interpolate_de_curve(pts, d, e)
    if n < d * e:
        assert cur is not None
    if cur is None:
        assert not lies_on_de_curve(pts, d, e)
    else:
        assert all(cur(p.x, p.y) == 0 for p in pts)
        lead = next(v for row in cur.coeffs for v in row if v)
        assert lead == 1


def test_decurve_normalization_enforced():
    with pytest.raises(ValueError):
        DECurve(2, 2, ((2, 0), (0, 1)))
    with pytest.raises(ValueError):
        DECurve(2, 2, ((0, 0), (0, 0)))
    assert DECurve.normalized(2, 2, ((0, 2), (4, 0))).coeffs == ((0, 1), (2, 0))


def test_select_independent_examples():
    chosen = select_independent(SQUARE + [P(5, 5)], 2, 2)
    assert len(chosen) == 4 and de_determinant(chosen, 2, 2) != 0
    assert select_independent(HYPER, 2, 2) is None
    assert select_independent(SQUARE[:3], 2, 2) is None


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([(2, 2), (2, 3), (3, 2)]), st.integers(0, 9), st.randoms())
def test_select_independent_iff_not_on_curve(de, n, rnd):
    d, e = de
    pts = [P(F(rnd.randint(-3, 3), rnd.randint(1, 2)), F(rnd.randint(-3, 3), rnd.randint(1, 2)))
           for _ in range(n)]
    chosen = select_independent(pts, d, e)
    if lies_on_de_curve(pts, d, e):
        assert chosen is None
    else:
        assert len(chosen) == d * e and de_determinant(chosen, d, e) != 0
        assert all(p in pts for p in chosen)


# -- denominator bounds ---------------------------------------------------------------

def test_denominator_bound_examples():
    assert denominator_bound(2, 2, 7, "lattice") == 7 ** 4
    assert denominator_bound(2, 2, 7, "height") == 7 ** 8
    assert denominator_bound(3, 4, 2, "lattice") == 2 ** 30


@pytest.mark.parametrize("d, e", [(2, 2), (2, 3), (3, 3)])
def test_lower_bound_law_fuzz(d, e):
    rng = random.Random(d * 31 + e)
    checked = 0
    while checked < 150:
        N = rng.randint(1, 12)
        pts = [P(F(rng.randint(-N, N), N), F(rng.randint(-N, N), N)) for _ in range(d * e)]
        delta = de_determinant(pts, d, e)
        if delta:
            assert abs(delta) * denominator_bound(d, e, N, "lattice") >= 1
            checked += 1
    checked = 0
    while checked < 150:
        N = rng.randint(1, 9)
        pts = [P(F(rng.randint(-N, N), rng.randint(1, N)), F(rng.randint(-N, N), rng.randint(1, N)))
               for _ in range(d * e)]
        delta = de_determinant(pts, d, e)
        if delta:
            assert abs(delta) * denominator_bound(d, e, N, "height") >= 1
            checked += 1


# -- mean value identities ---------------------------------------------------------------

def test_schwarz_identity_examples():
    assert schwarz_poly_identity_check([0, 0, 1], [0, 1, 2])
    assert schwarz_poly_identity_check([0, 1, 0, 3], [0, 1, 2, 3])
    # oracle: direct 4x4 determinant equals 3 * V(0,1,2,3) = 3 * 12
    f = lambda x: 3 * x ** 3 + x
    m = [[1, x, x * x, f(x)] for x in range(4)]
    assert leibniz_det(m) == 3 * vandermonde([0, 1, 2, 3]) == 36
    assert schwarz_poly_identity_check([7], [5])


def test_schwarz_identity_errors():
    with pytest.raises(ValueError):
        schwarz_poly_identity_check([0, 1], [1, 1])
    with pytest.raises(ValueError):
        schwarz_poly_identity_check([0, 0, 1], [1, 2])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.fractions(-9, 9, max_denominator=9), min_size=1, max_size=7), st.randoms())
def test_schwarz_identity_random(coeffs, rnd):
    n = len(coeffs) - 1
    nodes = set()
    while len(nodes) < n + 1:
        nodes.add(F(rnd.randint(-20, 20), rnd.randint(1, 6)))
    assert schwarz_poly_identity_check(coeffs, list(nodes))


def test_schwarz_bound_collinear_and_degenerate():
    line = poly_curve([0, 1])
    pts = [P(F(k, 10), F(k, 10)) for k in range(4)]
    assert schwarz_bound_check(line, [], pts, 2, 2)
    same = [P(F(1, 2), F(1, 4))] * 4
    assert schwarz_bound_check(poly_curve([0, 0, 1]), [], same, 2, 2)


def test_schwarz_bound_missing_order():
    c = poly_curve([0, 0, 1])
    pts = [P(F(k, 4), F(k * k, 16)) for k in range(4)]
    with pytest.raises(ValueError):
        schwarz_bound_check(c, derivative_bounds(c, 1), pts, 2, 2)


def test_schwarz_bound_pow_graph_all_subsets():
    # y = 4096^x has rational points exactly at x = j/12 on [0, 1]
    c = pow_curve(4096, 0, 1)
    pts = [P(F(j, 12), 2 ** j) for j in range(13)]
    bounds = derivative_bounds(c, 3)
    violations = [s for s in combinations(pts, 4) if not schwarz_bound_check(c, bounds, list(s), 2, 2)]
    assert violations == []


@pytest.mark.parametrize("d, e", [(2, 2), (2, 3), (3, 3)])
def test_schwarz_bound_poly_random(d, e):
    rng = random.Random(d + 10 * e)
    c = poly_curve([F(1, 3), -2, F(5, 2), 1], -1, 1)
    bounds = derivative_bounds(c, d * e - 1)
    for _ in range(100):
        lo = F(rng.randint(-20, 15), 20)
        xs = {lo + F(rng.randint(0, 40), 400) for _ in range(d * e)}
        while len(xs) < d * e:
            xs.add(lo + F(rng.randint(0, 40), 400))
        pts = [P(x, sum(co * x ** k for k, co in enumerate(c.kind.coeffs))) for x in sorted(xs)]
        assert schwarz_bound_check(c, bounds, pts, d, e)
