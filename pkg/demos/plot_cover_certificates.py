"""
Covering certificates
=====================

Covers the lattice points of y = x^3 by (3,4)-curves, checks the certificate
independently, round-trips it through JSON and shows that a single altered
coefficient is caught. Then tracks how the piece count grows with N.
"""

import json
from dataclasses import replace

import numpy as np

from detlab import (DECurve, build_cover, certificate_from_json, certificate_to_json,
                    delta_exponent, parse_curve, verify_cover)

cubic = parse_curve("poly:0,0,0,1")
# two warm-start pieces so that some pieces carry a genuine curve
cert = build_cover(cubic, 512, 3, 4, "lattice", initial_pieces=2)
print("pieces:", cert.piece_count, "meta:", cert.meta, "verified:", verify_cover(cert))

text = json.dumps(certificate_to_json(cert))
back = certificate_from_json(json.loads(text))
print("after JSON round trip:", verify_cover(back))

k = next(i for i, p in enumerate(cert.pieces) if isinstance(p.cover, DECurve))
cov = cert.pieces[k].cover
rows = [list(r) for r in cov.coeffs]
rows[-1][-1] += 1
pieces = list(cert.pieces)
pieces[k] = replace(pieces[k], cover=DECurve(cov.d, cov.e, tuple(map(tuple, rows))))
print("tampered:", verify_cover(replace(cert, pieces=pieces)))

###############################################################################
# Piece counts against N^delta
ns = [12 * 2 ** k for k in range(7)]
for spec, mode, d, e in [("poly:0,0,0,1", "lattice", 3, 4), ("poly:0,0,1", "height", 2, 3)]:
    c = parse_curve(spec)
    counts = [build_cover(c, n, d, e, mode).piece_count for n in ns]
    slope = np.polyfit(np.log(ns), np.log(counts), 1)[0]
    print(f"{spec} {mode} ({d},{e}): counts {counts}, slope {slope:.3f},"
          f" delta {float(delta_exponent(d, e, mode)):.3f}")
