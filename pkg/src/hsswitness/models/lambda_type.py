"""Lambda-type three-level atom coupled off-resonantly to a Lorentzian cavity.

Basis order is {|a>, |b>, |c>} with |a> the excited level. The decay rates
gamma_i(t) and Lamb shifts lambda_i(t) of the two channels a -> b, a -> c are

    gamma_i(t)  = int_0^t ds int J(w) cos((w - w_i) s) dw,
    lambda_i(t) = int_0^t ds int J(w) sin((w - w_i) s) dw,

J(w) = gamma0/(2 pi) lam^2 / ((w_cav - w)^2 + lam^2), w_i = w_cav + delta_i.
The frequency integral runs over w_cav +- trunc_k * lam (clipped at 0) and
the time integral is a running trapezoid on the simulation grid. D_i and L_i
are the time integrals of gamma_i and lambda_i (D_i is also written Gamma_i).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..linalg import trace_distance_stack
from ..numerics import Grid, Series, cumulative_integral, integrate_adaptive
from .states import phase_state

KERNEL_TOL = 1e-10


@dataclass(frozen=True)
class LambdaParams:
    gamma0: float = 0.01
    lam: float = 1.0
    omega_cav: float = 200.0
    delta1: float = 0.0
    delta2: float = 0.0
    trunc_k: float = 50.0

    def __post_init__(self):
        if not (self.gamma0 > 0 and self.lam > 0 and self.omega_cav > 0 and self.trunc_k > 0):
            raise ValueError("gamma0, lambda, omega_cav and trunc_k must be positive")

    def spectral_density(self, w):
        return self.gamma0 / (2 * np.pi) * self.lam**2 / ((self.omega_cav - w) ** 2 + self.lam**2)

    @property
    def window(self) -> tuple[float, float]:
        half = self.trunc_k * self.lam
        return max(0.0, self.omega_cav - half), self.omega_cav + half


def memory_kernels(p: LambdaParams, s: np.ndarray, tol: float = KERNEL_TOL) -> np.ndarray:
    """Frequency integrals at delays ``s``: rows are cos_1, cos_2, sin_1, sin_2."""
    s = np.asarray(s, dtype=float)
    w1 = p.omega_cav + p.delta1
    w2 = p.omega_cav + p.delta2

    def integrand(w):
        x1 = (w - w1) * s
        x2 = (w - w2) * s
        return p.spectral_density(w) * np.stack([np.cos(x1), np.cos(x2), np.sin(x1), np.sin(x2)])

    lo, hi = p.window
    # split at the Lorentzian peak so both halves start from a resolved shape
    mid = min(max(p.omega_cav, lo), hi)
    out = np.zeros((4,) + s.shape)
    for a, b in ((lo, mid), (mid, hi)):
        if b > a:
            out = out + integrate_adaptive(integrand, a, b, 0.5 * tol, min_depth=4)
    return out


@dataclass(frozen=True, eq=False)
class LambdaRates:
    """gamma_i and lambda_i sampled on a grid starting at t = 0."""

    grid: Grid
    gamma1: np.ndarray
    gamma2: np.ndarray
    lambda1: np.ndarray
    lambda2: np.ndarray

    @cached_property
    def solution(self) -> "LambdaSolution":
        return LambdaSolution(self)


def rate_series(p: LambdaParams, grid: Grid) -> LambdaRates:
    if grid.t0 != 0.0:
        raise ValueError("rate integrals start at t = 0")
    k = memory_kernels(p, grid.times)
    g1, g2, l1, l2 = (cumulative_integral(Series(grid, row)).values for row in k)
    return LambdaRates(grid, g1, g2, l1, l2)


def _grid_to(t: float, dt: float) -> Grid:
    n = max(3, int(round(t / dt)) + 1)
    return Grid(0.0, t / (n - 1), n)


def lambda_rates(p: LambdaParams, t: float, dt: float = 1e-3):
    """(gamma1, gamma2, lambda1, lambda2) at a single time."""
    if t == 0:
        return 0.0, 0.0, 0.0, 0.0
    r = rate_series(p, _grid_to(t, dt))
    return r.gamma1[-1], r.gamma2[-1], r.lambda1[-1], r.lambda2[-1]


class LambdaSolution:
    """Integrated quantities needed by the closed-form solution."""

    def __init__(self, rates: LambdaRates):
        self.rates = rates
        grid = rates.grid
        self.grid = grid
        self.d1 = cumulative_integral(Series(grid, rates.gamma1)).values
        self.d2 = cumulative_integral(Series(grid, rates.gamma2)).values
        self.l_sum = cumulative_integral(Series(grid, rates.lambda1 + rates.lambda2)).values
        self.decay = np.exp(-(self.d1 + self.d2))
        # Feed int gamma_i e^{-(D1+D2)} step by step with the exponential-integrator
        # weight, so the two feeds add up to exactly 1 - e^{-(D1+D2)}.
        dd1, dd2 = np.diff(self.d1), np.diff(self.d2)
        tot = dd1 + dd2
        with np.errstate(divide="ignore", invalid="ignore"):
            weight = np.where(np.abs(tot) < 1e-12, 1.0 - 0.5 * tot, -np.expm1(-tot) / tot)
        base = self.decay[:-1] * weight
        self.feed1 = np.concatenate(([0.0], np.cumsum(dd1 * base)))
        self.feed2 = np.concatenate(([0.0], np.cumsum(dd2 * base)))

    @classmethod
    def from_rates(cls, grid: Grid, gamma1, gamma2, lambda1=None, lambda2=None) -> "LambdaSolution":
        zero = np.zeros(grid.n)
        as_arr = lambda x: zero if x is None else np.broadcast_to(np.asarray(x, dtype=float), (grid.n,))
        return cls(LambdaRates(grid, as_arr(gamma1), as_arr(gamma2), as_arr(lambda1), as_arr(lambda2)))

    def states(self, rho0) -> np.ndarray:
        """rho(t) at every grid time, shape (n, 3, 3)."""
        r = np.asarray(rho0, dtype=complex)
        out = np.zeros((self.grid.n, 3, 3), dtype=complex)
        out[:, 0, 0] = r[0, 0] * self.decay
        out[:, 1, 1] = r[0, 0] * self.feed1 + r[1, 1]
        out[:, 2, 2] = r[0, 0] * self.feed2 + r[2, 2]
        coh = np.sqrt(self.decay) * np.exp(-1j * self.l_sum)
        out[:, 0, 1] = r[0, 1] * coh
        out[:, 0, 2] = r[0, 2] * coh
        out[:, 1, 2] = r[1, 2]
        out[:, 1, 0] = np.conj(out[:, 0, 1])
        out[:, 2, 0] = np.conj(out[:, 0, 2])
        out[:, 2, 1] = np.conj(out[:, 1, 2])
        return out

    def hss(self) -> np.ndarray:
        return np.sqrt(2.0) / 3.0 * np.exp(-0.5 * (self.d1 + self.d2))

    def chi(self) -> np.ndarray:
        g = self.rates.gamma1 + self.rates.gamma2
        return -g / (3.0 * np.sqrt(2.0)) * np.exp(-0.5 * (self.d1 + self.d2))

    def trace_distance(self, phi: float = 0.0) -> np.ndarray:
        r1, r2 = blp_pair(phi)
        return trace_distance_stack(self.states(r1), self.states(r2))


def lambda_evolve(p: LambdaParams, rho0, t: float, dt: float = 1e-3) -> np.ndarray:
    if t == 0:
        return np.asarray(rho0, dtype=complex).copy()
    return rate_series(p, _grid_to(t, dt)).solution.states(rho0)[-1]


def lambda_hss_and_chi(p: LambdaParams, t: float, dt: float = 1e-3):
    if t == 0:
        return np.sqrt(2.0) / 3.0, 0.0
    sol = rate_series(p, _grid_to(t, dt)).solution
    return float(sol.hss()[-1]), float(sol.chi()[-1])


def initial_state(phi: float) -> np.ndarray:
    """(e^{i phi}|a> + |b> + |c>)/sqrt(3)."""
    return phase_state(3, phi)


def blp_pair(phi: float = 0.0):
    """Probe states at phi +- pi/2; they differ only in the a-b and a-c coherences."""
    return initial_state(phi + np.pi / 2), initial_state(phi - np.pi / 2)
