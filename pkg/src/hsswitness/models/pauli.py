"""Qubit Pauli channel rho(t) = sum_i p_i(t) sigma_i rho(0) sigma_i.

Basis order is {|0>, |1>} with sigma_z|0> = |0>. The channel shrinks the
Bloch vector component i by lambda_i, where lambda_1 = e^{-2(Gamma_2 +
Gamma_3)} and cyclically, Gamma_i being the integrated rates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..errors import NotAProbability
from ..linalg import trace_distance_stack
from ..numerics import Grid, Series, cumulative_adaptive, cumulative_integral, integrate_adaptive
from ..speed import hss_from_derivative
from .rates import ZERO, RateProfile
from .states import family_derivative, family_state

PROB_TOL = 1e-10
QUAD_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, SX, SY, SZ)

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)


class Parametrization(str, enum.Enum):
    """The three optimal probe choices, each a phase family plus the phase it is read at.

    ``X_PLUS_0`` is (e^{i phi}|0> + |1>)/sqrt2 at phi = 0 and
    ``X_MINUS_HALF_PI`` is (e^{i phi}|0> - |1>)/sqrt2 at phi = pi/2. The
    family (e^{i phi}|0> + |1>)/sqrt2 has an equatorial tangent at every phi
    and so can never see lambda_3; ``X_PLUS_HALF_PI`` therefore uses
    (e^{i phi}|+> + |->)/sqrt2 at phi = pi/2, whose tangent is along z.
    """

    X_PLUS_0 = "x_plus_0"
    X_PLUS_HALF_PI = "x_plus_half_pi"
    X_MINUS_HALF_PI = "x_minus_half_pi"

    @property
    def basis(self):
        if self is Parametrization.X_PLUS_0:
            return (KET0, KET1)
        if self is Parametrization.X_MINUS_HALF_PI:
            return (KET0, -KET1)
        return ((KET0 + KET1) / np.sqrt(2), (KET0 - KET1) / np.sqrt(2))

    @property
    def phi(self) -> float:
        return 0.0 if self is Parametrization.X_PLUS_0 else np.pi / 2


@dataclass(frozen=True)
class PauliParams:
    gamma1: RateProfile = ZERO
    gamma2: RateProfile = ZERO
    gamma3: RateProfile = ZERO

    def rates(self, t):
        return np.array([self.gamma1(t), self.gamma2(t), self.gamma3(t)])


class Propagator(NamedTuple):
    big_gamma: np.ndarray  # (3,) or (3, n): integrated rates
    lam: np.ndarray  # Bloch shrink factors, same shape
    prob: np.ndarray  # (4,) or (4, n): p_0 .. p_3


def _times(t):
    return t.times if isinstance(t, Grid) else t


def integrated_rates(p: PauliParams, t) -> np.ndarray:
    """Gamma_i(t): trapezoid on a Grid, adaptive Simpson for scalar times or time arrays."""
    rates = (p.gamma1, p.gamma2, p.gamma3)
    if isinstance(t, Grid):
        return np.array([cumulative_integral(Series(t, g(t.times))).values for g in rates])
    if np.ndim(t) == 0:
        return np.array([integrate_adaptive(g, 0.0, float(t), QUAD_TOL) for g in rates])
    times = np.asarray(t, dtype=float)
    lead = times[0] != 0.0
    if lead:
        times = np.concatenate(([0.0], times))
    out = np.array([cumulative_adaptive(g, times, QUAD_TOL) for g in rates])
    return out[:, 1:] if lead else out


def propagator(p: PauliParams, t) -> Propagator:
    g1, g2, g3 = integrated_rates(p, t)
    lam = np.exp(-2.0 * np.array([g2 + g3, g1 + g3, g1 + g2]))
    l1, l2, l3 = lam
    prob = 0.25 * np.array([1 + l1 + l2 + l3, 1 + l1 - l2 - l3, 1 - l1 + l2 - l3, 1 - l1 - l2 + l3])
    return Propagator(np.array([g1, g2, g3]), lam, prob)


def apply(prop: Propagator, rho0, strict: bool = True) -> np.ndarray:
    """sum_i p_i sigma_i rho0 sigma_i; raises NotAProbability on negative weights if ``strict``."""
    prob = np.asarray(prop.prob)
    if strict and np.min(prob) < -PROB_TOL:
        raise NotAProbability(f"Pauli weight {np.min(prob):.3e} < 0: rates left the physical family")
    rho0 = np.asarray(rho0, dtype=complex)
    terms = np.array([s @ rho0 @ s for s in PAULIS])
    return np.tensordot(prob.T, terms, axes=([-1], [0]))


def evolve(p: PauliParams, rho0, t, strict: bool = True) -> np.ndarray:
    return apply(propagator(p, t), rho0, strict)


def probe_state(param: Parametrization | str, phi: float | None = None) -> np.ndarray:
    param = Parametrization(param)
    return family_state(param.basis, param.phi if phi is None else phi)


def hss(p: PauliParams, param: Parametrization | str, t, prop: Propagator | None = None, phi: float | None = None):
    """HSS with the phase derivative pushed through the (linear) channel."""
    param = Parametrization(param)
    prop = propagator(p, t) if prop is None else prop
    d0 = family_derivative(param.basis, param.phi if phi is None else phi)
    return hss_from_derivative(apply(prop, d0, strict=False))


def chi(p: PauliParams, param: Parametrization | str, t, prop: Propagator | None = None):
    """Closed-form witness for one of the three parametrizations."""
    param = Parametrization(param)
    g1, g2, g3 = p.rates(_times(t))
    big = (propagator(p, t) if prop is None else prop).big_gamma
    if param is Parametrization.X_PLUS_0:
        i, j, gi, gj = 0, 2, g1, g3
    elif param is Parametrization.X_PLUS_HALF_PI:
        i, j, gi, gj = 0, 1, g1, g2
    else:
        i, j, gi, gj = 1, 2, g2, g3
    out = -(gi + gj) * np.exp(-2.0 * big[i] - 2.0 * big[j])
    return float(out) if np.ndim(out) == 0 else out


def min_pair_rate(p: PauliParams, t):
    """min over i != j of gamma_i + gamma_j; the dynamics has memory where it is negative."""
    g1, g2, g3 = p.rates(_times(t))
    return np.minimum(np.minimum(g1 + g2, g1 + g3), g2 + g3)


def blp_pair(param: Parametrization | str):
    param = Parametrization(param)
    return probe_state(param, param.phi + np.pi / 2), probe_state(param, param.phi - np.pi / 2)


def trace_distance(p: PauliParams, param, t, prop: Propagator | None = None):
    prop = propagator(p, t) if prop is None else prop
    r1, r2 = blp_pair(param)
    return trace_distance_stack(apply(prop, r1, strict=False), apply(prop, r2, strict=False))
