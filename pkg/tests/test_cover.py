import json
import math
from dataclasses import replace
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from detlab.cover import (CoverCertificate, CoverError, Empty, InfeasibleError, Piece,
                          Singleton, build_cover, ceil_power, certificate_from_json,
                          certificate_to_json, choose_degrees, covers_points, delta_exponent,
                          dump_certificate, exponent_report, load_certificate, uniform_partition,
                          verify_cover, verify_report)
from detlab.curves import PointQ, enumerate_lattice_points, implicit_curve, poly_curve, pow_curve
from detlab.exact import IntervalQ, closed
from detlab.linalg import DECurve

CUBIC = poly_curve([0, 0, 0, 1])


def dense_cert():
    # y = x^2 at N = 400 has the 21 lattice points x = k/20
    return build_cover(poly_curve([0, 0, 1]), 400, 2, 2, "lattice", initial_pieces=4)


@pytest.mark.parametrize("d, e, mode, out", [
    (2, 2, "lattice", F(2, 3)), (2, 2, "height", F(4, 3)), (4, 4, "lattice", F(2, 5)),
    (3, 4, "lattice", F(5, 11)), (1, 2, "lattice", F(1, 1)),
])
def test_delta_exponent(d, e, mode, out):
    assert delta_exponent(d, e, mode) == out
    assert exponent_report(d, e, mode).delta == out


@pytest.mark.parametrize("d, e, mode", [(1, 1, "lattice"), (0, 3, "lattice"), (2, 2, "grid")])
def test_delta_exponent_errors(d, e, mode):
    with pytest.raises(ValueError):
        delta_exponent(d, e, mode)


def test_choose_degrees_examples():
    assert choose_degrees(F(3, 5), "lattice", 2) == (2, 4)
    assert choose_degrees(F(1, 2), "lattice", None) == (4, 4)
    # d = 1: delta(1, e) = 1 for every e > 1
    assert choose_degrees(F(3, 2), "lattice", 1) == (1, 2)
    with pytest.raises(InfeasibleError):
        choose_degrees(1, "lattice", 1)
    with pytest.raises(InfeasibleError):
        choose_degrees(F(1, 2), "lattice", 2)
    with pytest.raises(InfeasibleError):
        choose_degrees(0, "lattice", None)


@pytest.mark.parametrize("mode", ["lattice", "height"])
@pytest.mark.parametrize("d_fixed", [None, 2, 3, 5])
@pytest.mark.parametrize("target", [F(1, 7), F(1, 3), F(2, 5), F(3, 5), F(9, 10), F(4, 3)])
def test_choose_degrees_is_minimal(mode, d_fixed, target):
    # oracle: scan upwards through the formula
    floor = 0 if d_fixed is None else F(1, d_fixed) * (2 if mode == "height" else 1)
    if target <= floor:
        with pytest.raises(InfeasibleError):
            choose_degrees(target, mode, d_fixed)
        return
    d, e = choose_degrees(target, mode, d_fixed)
    assert delta_exponent(d, e, mode) < target
    if d_fixed is None:
        assert d == e
        assert all(delta_exponent(k, k, mode) >= target for k in range(2, d))
    else:
        assert d == d_fixed
        assert all(d * k == 1 or delta_exponent(d, k, mode) >= target for k in range(1, e))


@pytest.mark.parametrize("N, exponent", [(60, F(5, 11)), (768, F(2, 3)), (10 ** 6, F(1, 3)),
                                         (8, F(2, 3)), (1000, F(4, 3)), (1, F(5, 7))])
def test_ceil_power(N, exponent):
    m = ceil_power(N, exponent)
    # exact: (m-1)^den < N^num <= m^den
    assert m ** exponent.denominator >= N ** exponent.numerator
    assert m == 1 or (m - 1) ** exponent.denominator < N ** exponent.numerator


def test_uniform_partition():
    parts = uniform_partition(closed(0, 1), 4)
    assert [str(p) for p in parts] == ["[0,1/4)", "[1/4,1/2)", "[1/2,3/4)", "[3/4,1]"]


def test_cubic_lattice_round_trip():
    cert = build_cover(CUBIC, 60, 3, 4, "lattice")
    assert verify_cover(cert)
    assert cert.meta["initial_pieces"] == ceil_power(60, F(5, 11))
    assert cert.piece_count >= cert.meta["initial_pieces"]
    assert sum(len(p.points) for p in cert.pieces) == len(enumerate_lattice_points(CUBIC, 60))


def test_pow_height_cover():
    cert = build_cover(pow_curve(2), 100, 2, 2, "height")
    assert verify_cover(cert)
    assert cert.piece_count <= cert.meta["initial_pieces"]
    nonempty = [p for p in cert.pieces if not isinstance(p.cover, Empty)]
    assert len(nonempty) <= 2
    assert all(isinstance(p.cover, Singleton) for p in nonempty)


def test_empty_target_set():
    cert = build_cover(poly_curve([F(1, 5), 0, 1]), 3, 2, 2, "lattice")
    assert verify_cover(cert)
    assert all(isinstance(p.cover, Empty) for p in cert.pieces)


def test_boundary_point_goes_right():
    # x = 1/2 is a lattice point of y = x^2 at N = 4 and a cut of the 2-piece partition
    cert = build_cover(poly_curve([0, 0, 1]), 4, 2, 2, "lattice", initial_pieces=2)
    assert F(1, 2) in [p.x for p in cert.pieces[1].points]
    assert F(1, 2) not in [p.x for p in cert.pieces[0].points]


def test_bisection_happens_when_forced():
    # x = k/4 gives five points; t^3 on 1, t, t^3, t^4 cannot vanish five times
    c = poly_curve([0, 0, 0, 1])
    cert = build_cover(c, 64, 2, 2, "lattice", initial_pieces=1)
    assert verify_cover(cert)
    assert cert.meta["bisections"] > 0


def test_tamper_moved_point():
    cert = dense_cert()
    k = next(i for i, p in enumerate(cert.pieces) if len(p.points) >= 2 and i + 1 < cert.piece_count)
    pieces = list(cert.pieces)
    moved = pieces[k].points[-1]
    pieces[k] = replace(pieces[k], points=pieces[k].points[:-1])
    pieces[k + 1] = replace(pieces[k + 1], points=[moved] + list(pieces[k + 1].points))
    bad = replace(cert, pieces=pieces)
    assert not verify_cover(bad)
    assert any("outside" in msg for msg in verify_report(bad).errors)


def test_tamper_coefficient():
    cert = dense_cert()
    k = next(i for i, p in enumerate(cert.pieces) if isinstance(p.cover, DECurve))
    cov = cert.pieces[k].cover
    rows = [list(r) for r in cov.coeffs]
    # perturb the last coefficient so normalization is kept
    rows[-1][-1] += 1
    pieces = list(cert.pieces)
    pieces[k] = replace(pieces[k], cover=DECurve(cov.d, cov.e, tuple(map(tuple, rows))))
    assert not verify_cover(replace(cert, pieces=pieces))


def test_tamper_partition_and_degrees():
    cert = dense_cert()
    assert not verify_cover(replace(cert, pieces=cert.pieces[1:]))
    assert not verify_cover(replace(cert, d=3))
    assert not verify_cover(replace(cert, N=401))


def test_json_round_trip(tmp_path):
    cert = build_cover(implicit_curve({(1, 1): 1, (0, 0): -1}, F(1, 3), 3), 30, 2, 3, "height")
    data = certificate_to_json(cert)
    assert list(data) == ["curve", "n", "d", "e", "mode", "pieces", "meta"]
    assert list(data["pieces"][0]) == ["interval", "cover", "points"]
    text = json.dumps(data)
    assert "." not in text.replace(".0", "") or "e-" not in text
    back = certificate_from_json(json.loads(text))
    assert certificate_to_json(back) == data
    assert verify_cover(back)
    path = tmp_path / "cert.json"
    dump_certificate(cert, path)
    assert certificate_to_json(load_certificate(path)) == data


def test_json_has_no_floats():
    data = certificate_to_json(build_cover(CUBIC, 60, 3, 4, "lattice"))

    def walk(v):
        if isinstance(v, float):
            raise AssertionError(f"float {v} in certificate")
        if isinstance(v, dict):
            for x in v.values():
                walk(x)
        elif isinstance(v, list):
            for x in v:
                walk(x)
    walk(data)


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("pieces"),
    lambda d: d["pieces"][0]["cover"].update(kind="circle"),
    lambda d: d["pieces"][0]["interval"].update(lo="1/0"),
    lambda d: d.update(curve="poly:"),
])
def test_json_malformed(mutate):
    data = certificate_to_json(build_cover(CUBIC, 12, 3, 4, "lattice"))
    mutate(data)
    with pytest.raises(ValueError):
        certificate_from_json(data)


FAMILIES = [
    CUBIC,
    poly_curve([0, 0, 1]),
    poly_curve([F(1, 2), -1, 0, F(2, 3)], -1, 1),
    pow_curve(4),
    implicit_curve({(1, 1): 1, (0, 0): -1}, F(1, 2), 2),
    implicit_curve({(0, 2): 1, (1, 0): -1}, 0, 1),
]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FAMILIES), st.integers(1, 500),
       st.sampled_from([(2, 2), (2, 3), (3, 3), (3, 4)]), st.sampled_from(["lattice", "height"]))
def test_round_trip_fuzz(curve, N, de, mode):
    if mode == "height":
        N = min(N, 120)  # height sets grow like N^2 for some families
    cert = build_cover(curve, N, *de, mode)
    assert verify_cover(cert), verify_report(cert).errors
    for piece in cert.pieces:
        if isinstance(piece.cover, DECurve):
            assert all(piece.cover.vanishes_at(p) for p in piece.points)


@pytest.mark.parametrize("curve", [poly_curve([0, 0, 1]), CUBIC, pow_curve(2)])
@pytest.mark.parametrize("N", [4, 16, 64])
def test_height_cover_covers_lattice_points(curve, N):
    cert = build_cover(curve, N, 2, 3, "height")
    unit = [p for p in enumerate_lattice_points(curve, N) if 0 <= p.y <= 1]
    assert covers_points(cert, unit)


def test_piece_count_slope():
    ns = [12 * 2 ** k for k in range(7)]
    counts = [build_cover(CUBIC, n, 3, 4, "lattice").piece_count for n in ns]
    slope = np.polyfit(np.log(ns), np.log(counts), 1)[0]
    assert slope <= float(delta_exponent(3, 4)) + 0.15


def test_depth_cap(monkeypatch):
    import detlab.cover as cover
    monkeypatch.setattr(cover, "MAX_DEPTH", 0)
    with pytest.raises(CoverError):
        build_cover(CUBIC, 64, 2, 2, "lattice", initial_pieces=1)
