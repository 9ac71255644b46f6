"""Count series over N grids and log-log exponent fits."""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .curves import Curve, enumerate_height_points, enumerate_lattice_points

THREADS_ENV = "DETLAB_THREADS"


class FitError(ValueError):
    pass


class SeriesError(RuntimeError):
    pass


@dataclass(frozen=True)
class CountSeries:
    curve: Curve | None
    mode: str
    samples: tuple

    def __post_init__(self):
        ns = [n for n, _ in self.samples]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("N values must be strictly increasing")
        if any(c < 0 for _, c in self.samples):
            raise ValueError("counts must be nonnegative")

    @property
    def ns(self) -> list[int]:
        return [n for n, _ in self.samples]

    @property
    def counts(self) -> list[int]:
        return [c for _, c in self.samples]


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float


def count_points(c: Curve, N: int, mode: str) -> int:
    if mode == "lattice":
        return len(enumerate_lattice_points(c, N))
    if mode == "height":
        return len(enumerate_height_points(c, N))
    raise ValueError(f"unknown mode {mode!r}")


def _count_task(args):
    c, N, mode = args
    return count_points(c, N, mode)


def worker_count() -> int:
    """Worker processes allowed by DETLAB_THREADS (unset: 1, 0: one per CPU)."""
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    n = int(raw)
    if n < 0:
        raise ValueError(f"{THREADS_ENV} must be >= 0")
    return n or (os.cpu_count() or 1)


def run_series(c: Curve, mode: str, n_grid: Sequence[int]) -> CountSeries:
    """Exact counts for every N of the grid, in grid order."""
    grid = list(n_grid)
    if not grid:
        raise ValueError("empty N grid")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("N grid must be strictly increasing")
    workers = min(worker_count(), len(grid))
    tasks = [(c, N, mode) for N in grid]
    try:
        if workers > 1:
            with ProcessPoolExecutor(workers) as pool:
                counts = list(pool.map(_count_task, tasks))
        else:
            counts = []
            for task in tasks:
                counts.append(_count_task(task))
    except Exception as exc:
        done = len(counts) if workers == 1 else None
        where = f" at N={grid[done]}" if done is not None else ""
        raise SeriesError(f"enumeration failed{where}: {exc}") from exc
    return CountSeries(c, mode, tuple(zip(grid, counts)))


def fit_exponent(s: CountSeries) -> FitResult:
    """Least squares line through (ln N, ln count)."""
    ns, counts = s.ns, s.counts
    if len(ns) < 3:
        raise FitError("need at least 3 samples")
    if min(counts) < 1:
        raise FitError("all counts must be >= 1")
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(counts, dtype=float))
    if np.ptp(x) == 0:
        raise FitError("all N values are equal")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    ss_res = float((resid ** 2).sum())
    # a constant series is fitted exactly; call that r^2 = 1
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return FitResult(float(slope), float(intercept), r2)


def fit_pairs(ns: Sequence[int], values: Sequence[int]) -> FitResult:
    return fit_exponent(CountSeries(None, "", tuple(zip(ns, values))))


def geometric_grid(a: int, b: int, factor) -> list[int]:
    """a, a*factor, ... up to b (rounded to integers, duplicates dropped)."""
    if a < 1 or b < a:
        raise ValueError("grid needs 1 <= a <= b")
    if factor <= 1:
        raise ValueError("grid factor must exceed 1")
    out = []
    v = a
    while v <= b:
        n = int(round(v))
        if not out or n > out[-1]:
            out.append(n)
        v *= factor
    return out


def parse_grid(text: str) -> list[int]:
    """``"a:b:factor"`` geometric grid, or a comma-separated explicit list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must look like a:b:factor, got {text!r}")
        a, b = int(parts[0]), int(parts[1])
        factor = float(parts[2]) if "." in parts[2] else int(parts[2])
        return geometric_grid(a, b, factor)
    return [int(v) for v in text.split(",") if v.strip()]


def series_to_csv(s: CountSeries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "count"])
    for n, c in s.samples:
        w.writerow([n, c])
    return buf.getvalue()


def series_from_csv(text: str, mode: str = "") -> CountSeries:
    rows = list(csv.DictReader(io.StringIO(text)))
    if rows and set(rows[0]) != {"n", "count"}:
        raise ValueError("CSV header must be n,count")
    return CountSeries(None, mode, tuple((int(r["n"]), int(r["count"])) for r in rows))


def power_law_residual(s: CountSeries, exponent: float) -> float:
    """Spread of ln(count) - exponent*ln(N); 0 for an exact power law."""
    vals = [math.log(c) - exponent * math.log(n) for n, c in s.samples]
    return max(vals) - min(vals)
