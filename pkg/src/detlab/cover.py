"""Covering certificates: rational points of a curve covered by few (d,e)-curves.

``build_cover`` partitions the curve's domain uniformly into about N^delta
pieces and bisects any piece whose points admit no common (d,e)-curve.
``verify_cover`` re-derives everything it needs from the certificate itself.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .curves import (Curve, PointQ, enumerate_height_points,
                     enumerate_lattice_points)
from .exact import IntervalQ, as_rational, rational_str
from .linalg import DECurve, interpolate_de_curve
from .parsing import format_curve, parse_curve

MODES = ("lattice", "height")
MAX_DEPTH = 64


class CoverError(RuntimeError):
    pass


class InfeasibleError(ValueError):
    pass


def _check_mode(mode: str):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


# -- exponents --------------------------------------------------------------------

def delta_exponent(d: int, e: int, mode: str = "lattice") -> Fraction:
    """(d+e-2)/(de-1) for lattice points, twice that for height-bounded points."""
    _check_mode(mode)
    if d < 1 or e < 1:
        raise ValueError("d and e must be positive")
    if d * e == 1:
        raise ValueError("delta is undefined for d = e = 1")
    delta = Fraction(d + e - 2, d * e - 1)
    return 2 * delta if mode == "height" else delta


@dataclass(frozen=True)
class ExponentReport:
    d: int
    e: int
    mode: str
    delta: Fraction


def exponent_report(d: int, e: int, mode: str = "lattice") -> ExponentReport:
    return ExponentReport(d, e, mode, delta_exponent(d, e, mode))


def choose_degrees(target, mode: str = "lattice", d_fixed: int | None = None) -> tuple[int, int]:
    """Smallest e (or d = e when ``d_fixed`` is None) with delta < target."""
    _check_mode(mode)
    t = as_rational(target)
    if mode == "height":
        t = t / 2
    if d_fixed is None:
        if t <= 0:
            raise InfeasibleError("target must be positive")
        # delta(d, d) = 2/(d+1) in lattice units
        d = max(2, int(2 / t - 1) + 1)
        while Fraction(2, d + 1) >= t:
            d += 1
        return d, d
    d = d_fixed
    if d < 1:
        raise ValueError("d must be positive")
    if t <= Fraction(1, d):
        raise InfeasibleError(f"delta never drops below 1/{d}; target {target} is unreachable")
    # (d+e-2)/(de-1) < t  <=>  e (t d - 1) > d - 2 + t
    e = max(1, int((d - 2 + t) / (t * d - 1)))
    while d * e == 1 or Fraction(d + e - 2, d * e - 1) >= t:
        e += 1
    return d, e


# -- certificates --------------------------------------------------------------------

@dataclass(frozen=True)
class Singleton:
    point: PointQ


@dataclass(frozen=True)
class Empty:
    pass


Cover = Union[DECurve, Singleton, Empty]


@dataclass
class Piece:
    interval: IntervalQ
    cover: Cover
    points: list


@dataclass
class CoverCertificate:
    curve: Curve
    N: int
    d: int
    e: int
    mode: str
    pieces: list
    meta: dict = field(default_factory=dict)

    @property
    def piece_count(self) -> int:
        return len(self.pieces)

    def to_json(self) -> dict:
        return certificate_to_json(self)


def target_points(c: Curve, N: int, mode: str) -> list[PointQ]:
    _check_mode(mode)
    if mode == "lattice":
        return enumerate_lattice_points(c, N)
    return enumerate_height_points(c, N)


def ceil_power(N: int, exponent: Fraction) -> int:
    """Exact ceil(N ** exponent) for a nonnegative rational exponent."""
    num, den = exponent.numerator, exponent.denominator
    target = N ** num
    m = max(1, round(float(N) ** float(exponent)))
    while m ** den < target:
        m += 1
    while m > 1 and (m - 1) ** den >= target:
        m -= 1
    return m


def uniform_partition(I: IntervalQ, m: int) -> list[IntervalQ]:
    """m pieces [lo, hi) of equal length; the end flags of I are kept at its ends."""
    if I.lo == I.hi:
        return [I]
    step = I.length / m
    cuts = [I.lo + k * step for k in range(m + 1)]
    out = []
    for k in range(m):
        out.append(IntervalQ(cuts[k], cuts[k + 1],
                             I.closed_lo if k == 0 else True,
                             I.closed_hi if k == m - 1 else False))
    return out


def _split(I: IntervalQ) -> tuple[IntervalQ, IntervalQ]:
    mid = (I.lo + I.hi) / 2
    return IntervalQ(I.lo, mid, I.closed_lo, False), IntervalQ(mid, I.hi, True, I.closed_hi)


def build_cover(c: Curve, N: int, d: int, e: int, mode: str = "lattice",
                initial_pieces: int | None = None) -> CoverCertificate:
    """Cover the target set of ``c`` (lattice or height points) by (d,e)-curves."""
    _check_mode(mode)
    pts = target_points(c, N, mode)
    if initial_pieces is None:
        initial_pieces = ceil_power(N, delta_exponent(d, e, mode)) if d * e > 1 else 1
    if initial_pieces < 1:
        raise ValueError("initial_pieces must be positive")

    stats = {"initial_pieces": initial_pieces, "bisections": 0, "max_depth": 0}
    pieces: list[Piece] = []

    def settle(I: IntervalQ, members: list[PointQ], depth: int):
        stats["max_depth"] = max(stats["max_depth"], depth)
        if not members:
            pieces.append(Piece(I, Empty(), []))
            return
        if len(members) == 1:
            pieces.append(Piece(I, Singleton(members[0]), members))
            return
        curve = interpolate_de_curve(members, d, e)
        if curve is not None:
            pieces.append(Piece(I, curve, members))
            return
        assert len(members) >= d * e, "fewer than de points always lie on a (d,e)-curve"
        if depth >= MAX_DEPTH:
            raise CoverError(f"bisection depth {MAX_DEPTH} exceeded on piece {I} "
                             f"holding {len(members)} points")
        stats["bisections"] += 1
        left, right = _split(I)
        settle(left, [p for p in members if p.x in left], depth + 1)
        settle(right, [p for p in members if p.x in right], depth + 1)

    remaining = pts
    for I in uniform_partition(c.domain, initial_pieces):
        inside = [p for p in remaining if p.x in I]
        # points are sorted by x, so everything in I is a prefix of what remains
        remaining = remaining[len(inside):]
        settle(I, inside, 0)
    return CoverCertificate(c, N, d, e, mode, pieces, stats)


# -- verification -----------------------------------------------------------------------

@dataclass
class VerifyReport:
    ok: bool
    errors: list

    def __bool__(self):
        return self.ok


def verify_report(cert: CoverCertificate) -> VerifyReport:
    errors: list[str] = []
    try:
        expected = target_points(cert.curve, cert.N, cert.mode)
    except Exception as exc:  # noqa: BLE001 - any failure here means "not verified"
        return VerifyReport(False, [f"cannot enumerate target set: {exc}"])
    pieces = cert.pieces
    dom = cert.curve.domain
    if not pieces:
        return VerifyReport(False, ["certificate has no pieces"])

    # partition of the domain
    first, last = pieces[0].interval, pieces[-1].interval
    if first.lo != dom.lo or first.closed_lo != dom.closed_lo:
        errors.append("first piece does not start at the domain's left end")
    if last.hi != dom.hi or last.closed_hi != dom.closed_hi:
        errors.append("last piece does not end at the domain's right end")
    for k in range(1, len(pieces)):
        a, b = pieces[k - 1].interval, pieces[k].interval
        if a.hi != b.lo or a.closed_hi == b.closed_lo:
            errors.append(f"pieces {k - 1} and {k} do not abut exactly")

    # every target point in exactly the piece that contains it
    claimed = []
    for k, piece in enumerate(pieces):
        for p in piece.points:
            if p.x not in piece.interval:
                errors.append(f"piece {k}: point {p} lies outside {piece.interval}")
        claimed.extend(piece.points)
    if sorted(claimed) != sorted(expected) or len(set(claimed)) != len(claimed):
        errors.append(f"pieces list {len(claimed)} points, target set has {len(expected)}")

    for k, piece in enumerate(pieces):
        cov = piece.cover
        if isinstance(cov, Empty):
            if piece.points:
                errors.append(f"piece {k}: empty cover with points")
        elif isinstance(cov, Singleton):
            if list(piece.points) != [cov.point]:
                errors.append(f"piece {k}: singleton cover does not match its points")
        elif isinstance(cov, DECurve):
            if (cov.d, cov.e) != (cert.d, cert.e):
                errors.append(f"piece {k}: cover degrees ({cov.d},{cov.e}) != ({cert.d},{cert.e})")
            for p in piece.points:
                if not cov.vanishes_at(p):
                    errors.append(f"piece {k}: cover polynomial does not vanish at {p}")
        else:
            errors.append(f"piece {k}: unknown cover {cov!r}")
    return VerifyReport(not errors, errors)


def verify_cover(cert: CoverCertificate) -> bool:
    return verify_report(cert).ok


def covers_points(cert: CoverCertificate, pts) -> bool:
    """Whether every point of ``pts`` lies on the cover of the piece holding its x."""
    for p in pts:
        piece = next((pc for pc in cert.pieces if p.x in pc.interval), None)
        if piece is None:
            return False
        cov = piece.cover
        if isinstance(cov, DECurve):
            if not cov.vanishes_at(p):
                return False
        elif isinstance(cov, Singleton):
            if cov.point != p:
                return False
        else:
            return False
    return True


# -- JSON ------------------------------------------------------------------------------

def _pt_json(p: PointQ) -> list:
    return [rational_str(p.x), rational_str(p.y)]


def _cover_json(cov: Cover) -> dict:
    if isinstance(cov, DECurve):
        return {"kind": "curve", "coeffs": [[rational_str(v) for v in row] for row in cov.coeffs]}
    if isinstance(cov, Singleton):
        return {"kind": "point", "point": _pt_json(cov.point)}
    return {"kind": "empty", "coeffs": None}


def certificate_to_json(cert: CoverCertificate) -> dict:
    return {
        "curve": format_curve(cert.curve),
        "n": cert.N,
        "d": cert.d,
        "e": cert.e,
        "mode": cert.mode,
        "pieces": [
            {
                "interval": {
                    "lo": rational_str(pc.interval.lo),
                    "hi": rational_str(pc.interval.hi),
                    "closed_lo": pc.interval.closed_lo,
                    "closed_hi": pc.interval.closed_hi,
                },
                "cover": _cover_json(pc.cover),
                "points": [_pt_json(p) for p in pc.points],
            }
            for pc in cert.pieces
        ],
        "meta": {k: cert.meta.get(k) for k in ("initial_pieces", "bisections", "max_depth")},
    }


def _point_from(raw) -> PointQ:
    x, y = raw
    return PointQ(Fraction(x), Fraction(y))


def certificate_from_json(data: dict) -> CoverCertificate:
    """Inverse of ``certificate_to_json``; raises ValueError on malformed input."""
    try:
        d, e = int(data["d"]), int(data["e"])
        pieces = []
        for raw in data["pieces"]:
            iv = raw["interval"]
            interval = IntervalQ(Fraction(iv["lo"]), Fraction(iv["hi"]),
                                 bool(iv["closed_lo"]), bool(iv["closed_hi"]))
            cov = raw["cover"]
            if cov["kind"] == "curve":
                cover = DECurve(len(cov["coeffs"]), len(cov["coeffs"][0]),
                                tuple(tuple(Fraction(v) for v in row) for row in cov["coeffs"]))
            elif cov["kind"] == "point":
                cover = Singleton(_point_from(cov["point"]))
            elif cov["kind"] == "empty":
                cover = Empty()
            else:
                raise ValueError(f"unknown cover kind {cov['kind']!r}")
            pieces.append(Piece(interval, cover, [_point_from(p) for p in raw["points"]]))
        return CoverCertificate(parse_curve(data["curve"]), int(data["n"]), d, e,
                                data["mode"], pieces, dict(data.get("meta") or {}))
    except (KeyError, TypeError, IndexError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed certificate: {exc}") from exc


def dump_certificate(cert: CoverCertificate, path) -> None:
    with open(path, "w") as fh:
        json.dump(certificate_to_json(cert), fh, indent=1)
        fh.write("\n")


def load_certificate(path) -> CoverCertificate:
    with open(path) as fh:
        return certificate_from_json(json.load(fh))
