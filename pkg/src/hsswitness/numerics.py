"""Quadrature, running integrals and finite differences on uniform time grids."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import tolerances as tol
from .errors import GridMismatch, SubdivisionLimit


@dataclass(frozen=True)
class Grid:
    """Uniform grid ``t0, t0 + dt, ..., t0 + (n-1) dt``."""

    t0: float
    dt: float
    n: int

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.n < 3:
            raise ValueError(f"a grid needs at least 3 points, got {self.n}")

    @classmethod
    def span(cls, t_max: float, dt: float, t0: float = 0.0) -> "Grid":
        """Grid from ``t0`` to (the nearest multiple of ``dt`` to) ``t_max``."""
        if not dt > 0:
            raise ValueError(f"dt must be positive, got {dt}")
        n = int(round((t_max - t0) / dt)) + 1
        return cls(float(t0), float(dt), n)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)

    @property
    def t_end(self) -> float:
        return self.t0 + self.dt * (self.n - 1)


@dataclass(frozen=True, eq=False)
class Series:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n,):
            raise ValueError(f"series length {values.shape} does not match grid of {self.grid.n}")
        object.__setattr__(self, "values", values)

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    def __len__(self):
        return self.grid.n


def sample(f: Callable, grid: Grid) -> Series:
    """Series of ``f`` evaluated on the grid (``f`` must accept arrays)."""
    return Series(grid, np.broadcast_to(f(grid.times), (grid.n,)))


def _err(x) -> float:
    return float(np.max(np.abs(x)))


def integrate_adaptive(
    f: Callable,
    a: float,
    b: float,
    tol_: float = 1e-10,
    max_depth: int = tol.SIMPSON_MAX_DEPTH,
    min_depth: int = 2,
):
    """Adaptive Simpson quadrature of ``f`` over ``[a, b]``.

    ``f`` may return a scalar or a numpy array; for arrays every component
    must meet the absolute tolerance. The first ``min_depth`` levels are
    always split so that periodic integrands sampled at their zeros cannot
    fool the initial estimate.
    """
    if b < a:
        raise ValueError(f"integration bounds out of order: {a} > {b}")
    if not tol_ > 0:
        raise ValueError("tolerance must be positive")
    if a == b:
        return 0.0 * f(a)

    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson(f, a, b, fa, fm, fb, whole, tol_, 0, max_depth, min_depth)


def _simpson(f, a, b, fa, fm, fb, whole, tol_, depth, max_depth, min_depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth >= min_depth and _err(delta) <= 15.0 * tol_:
        return left + right + delta / 15.0
    if depth >= max_depth:
        raise SubdivisionLimit(
            f"adaptive Simpson exceeded depth {max_depth} on [{a}, {b}]"
        )
    return _simpson(f, a, m, fa, flm, fm, left, 0.5 * tol_, depth + 1, max_depth, min_depth) + _simpson(
        f, m, b, fm, frm, fb, right, 0.5 * tol_, depth + 1, max_depth, min_depth
    )


def cumulative_adaptive(f: Callable, times: np.ndarray, tol_: float = 1e-10) -> np.ndarray:
    """Running integral ``int_{times[0]}^{t_k} f`` built segment by segment."""
    out = np.zeros(len(times))
    acc = 0.0
    for k in range(1, len(times)):
        acc += integrate_adaptive(f, times[k - 1], times[k], tol_, min_depth=0)
        out[k] = acc
    return out


def cumulative_integral(samples: Series) -> Series:
    """Composite-trapezoid running integral; the first value is 0."""
    v = samples.values
    steps = 0.5 * samples.grid.dt * (v[1:] + v[:-1])
    return Series(samples.grid, np.concatenate(([0.0], np.cumsum(steps))))


def central_diff(samples: Series) -> Series:
    """Second-order derivative estimate with one-sided 3-point ends."""
    v = samples.values
    h = samples.grid.dt
    d = np.empty_like(v)
    d[1:-1] = (v[2:] - v[:-2]) / (2.0 * h)
    # (-3 v0 + 4 v1 - v2) and its mirror, in difference form so constants give exact zeros
    d[0] = (3.0 * (v[1] - v[0]) - (v[2] - v[1])) / (2.0 * h)
    d[-1] = (3.0 * (v[-1] - v[-2]) - (v[-2] - v[-3])) / (2.0 * h)
    return Series(samples.grid, d)


def positive_part_integral(samples: Series) -> float:
    """Trapezoid integral of ``max(v, 0)``, clipping each sample first."""
    v = np.maximum(samples.values, 0.0)
    return float(0.5 * samples.grid.dt * np.sum(v[1:] + v[:-1]))


def require_same_grid(a: Series, b: Series) -> None:
    if a.grid != b.grid:
        raise GridMismatch(f"series grids differ: {a.grid} vs {b.grid}")
