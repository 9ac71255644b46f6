"""
Growth exponents of point counts
================================

Counts lattice points and height-bounded rational points on y = x^2 and
y = 2^x, fits log-log slopes and writes one SVG per series.
"""

from detlab import fit_exponent, geometric_grid, loglog_svg, parse_curve, run_series

series = {
    "lattice_parabola": run_series(parse_curve("poly:0,0,1@[0,1)"), "lattice",
                                   [m * m for m in range(4, 65)]),
    "height_parabola": run_series(parse_curve("poly:0,0,1"), "height", geometric_grid(16, 4096, 2)),
    "height_cubic": run_series(parse_curve("poly:0,0,0,1"), "height", geometric_grid(16, 4096, 2)),
    "height_pow2": run_series(parse_curve("pow:2"), "height", geometric_grid(2, 4096, 2)),
}

for name, s in series.items():
    fit = fit_exponent(s)
    print(f"{name:>18}: slope {fit.slope:.4f}  r^2 {fit.r_squared:.4f}")
    with open(f"{name}.svg", "w") as fh:
        fh.write(loglog_svg(s.ns, s.counts, fit.slope, fit.intercept, title=name))
