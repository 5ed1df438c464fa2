"""From HSS and trace-distance series to non-Markovianity verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import tolerances as tol
from .numerics import Series, central_diff, positive_part_integral, require_same_grid


@dataclass(frozen=True)
class Interval:
    t_start: float
    t_end: float
    peak: float


@dataclass(frozen=True)
class Agreement:
    samples_compared: int
    sign_matches: int
    excluded_below_tol: int

    @property
    def fraction(self) -> float:
        return self.sign_matches / self.samples_compared if self.samples_compared else 1.0

    @property
    def all_match(self) -> bool:
        return self.sign_matches == self.samples_compared


@dataclass(frozen=True, eq=False)
class WitnessReport:
    chi: Series
    sigma: Series
    nm_intervals_chi: list[Interval]
    nm_intervals_sigma: list[Interval]
    n_hss: float
    agreement: Agreement
    phi: float = 0.0
    extras: dict = field(default_factory=dict)

    @property
    def non_markovian(self) -> bool:
        return bool(self.nm_intervals_chi)


def chi_series(hss: Series) -> Series:
    """d HSS/dt on the grid."""
    return central_diff(hss)


def sigma_series(distance: Series) -> Series:
    """d D/dt on the grid."""
    return central_diff(distance)


def detect_intervals(w: Series, tol_: float = tol.WITNESS_TOL) -> list[Interval]:
    """Maximal runs with ``w > tol_``.

    Interior boundaries are placed where the straight line between the two
    bracketing samples crosses ``tol_``; runs touching the grid ends stop there.
    """
    if tol_ < 0:
        raise ValueError("tolerance must be nonnegative")
    v = w.values
    t = w.times
    above = v > tol_
    if not above.any():
        return []
    edges = np.diff(above.astype(np.int8))
    starts = list(np.flatnonzero(edges == 1) + 1)
    ends = list(np.flatnonzero(edges == -1))
    if above[0]:
        starts.insert(0, 0)
    if above[-1]:
        ends.append(len(v) - 1)

    out = []
    for i, j in zip(starts, ends):
        t0 = t[i] if i == 0 else _crossing(t[i - 1], t[i], v[i - 1], v[i], tol_)
        t1 = t[j] if j == len(v) - 1 else _crossing(t[j], t[j + 1], v[j], v[j + 1], tol_)
        if t1 > t0:
            out.append(Interval(float(t0), float(t1), float(np.max(v[i : j + 1]))))
    return out


def _crossing(ta, tb, va, vb, level):
    return ta + (level - va) * (tb - ta) / (vb - va)


def thresholded_measure(chi: Series, tol_: float = tol.WITNESS_TOL) -> float:
    """Positive-part integral of ``chi`` after zeroing samples at or below ``tol_``."""
    v = np.where(chi.values > tol_, chi.values, 0.0)
    return positive_part_integral(Series(chi.grid, v))


def phi_grid(size: int) -> np.ndarray:
    if size < 1:
        raise ValueError("phi grid needs at least one point")
    return 2.0 * np.pi * np.arange(size) / size


def n_hss_measure(
    model_eval: Callable[[float], Series],
    phi_grid_size: int = tol.DEFAULT_PHI_GRID,
    tol_: float = tol.WITNESS_TOL,
) -> tuple[float, float]:
    """Degree of non-Markovianity maximized over a uniform phase grid on [0, 2 pi).

    Returns ``(n_hss, phi_star)``; the first grid point attaining the maximum wins.
    """
    best, best_phi = -1.0, 0.0
    for phi in phi_grid(phi_grid_size):
        value = thresholded_measure(chi_series(model_eval(phi)), tol_)
        if value > best:
            best, best_phi = value, float(phi)
    return best, best_phi


def sign_agreement(chi: Series, sigma: Series, tol_: float = tol.WITNESS_TOL) -> Agreement:
    """Compare signs wherever both witnesses exceed ``tol_`` in magnitude."""
    require_same_grid(chi, sigma)
    mask = (np.abs(chi.values) > tol_) & (np.abs(sigma.values) > tol_)
    matches = int(np.sum(np.sign(chi.values[mask]) == np.sign(sigma.values[mask])))
    compared = int(np.sum(mask))
    return Agreement(compared, matches, int(len(mask) - compared))


def build_report(hss: Series, distance: Series, phi: float = 0.0, tol_: float = tol.WITNESS_TOL) -> WitnessReport:
    chi = chi_series(hss)
    sigma = sigma_series(distance)
    return WitnessReport(
        chi=chi,
        sigma=sigma,
        nm_intervals_chi=detect_intervals(chi, tol_),
        nm_intervals_sigma=detect_intervals(sigma, tol_),
        n_hss=thresholded_measure(chi, tol_),
        agreement=sign_agreement(chi, sigma, tol_),
        phi=phi,
    )


def turning_points(s: Series) -> tuple[np.ndarray, np.ndarray]:
    """Indices of interior local maxima and minima."""
    v = s.values
    mid = v[1:-1]
    maxima = np.flatnonzero((mid > v[:-2]) & (mid >= v[2:])) + 1
    minima = np.flatnonzero((mid < v[:-2]) & (mid <= v[2:])) + 1
    return maxima, minima


def zero_touches(s: Series, floor: float) -> np.ndarray:
    """Interior local minima whose magnitude is at most ``floor``."""
    _, minima = turning_points(s)
    idx = [i for i in minima if abs(s.values[i]) <= floor]
    return np.asarray(idx, dtype=int)
