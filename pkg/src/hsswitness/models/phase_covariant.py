"""Qubit under phase-covariant noise.

Basis order is {|1>, |0>} (excited state first), so ``rho[0, 0]`` is the
excited population P1 and ``rho[0, 1]`` the coherence Q. The probe state is
(e^{i phi}|+> + |->)/sqrt(2) with |+-> = (|0> +- |1>)/sqrt(2).

For rates gamma_1..3 and frequency shift omega the exact solution is

    P1(t) = e^{-Gamma}(G + P1(0)),   Q(t) = Q(0) e^{i Omega - Gamma/2 - Gamma3}

with Gamma = int (gamma_1+gamma_2)/2, Gamma3 = int gamma_3, Omega = int 2 omega
and G = int e^{Gamma(s)} gamma_2(s)/2 ds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..linalg import trace_distance_stack
from ..numerics import cumulative_adaptive, integrate_adaptive
from ..speed import hss_from_derivative
from .rates import ZERO, RateProfile

QUAD_TOL = 1e-10

KET1 = np.array([1.0, 0.0], dtype=complex)
KET0 = np.array([0.0, 1.0], dtype=complex)
PLUS = (KET0 + KET1) / np.sqrt(2)
MINUS = (KET0 - KET1) / np.sqrt(2)


@dataclass(frozen=True)
class PhaseCovariantParams:
    gamma1: RateProfile = ZERO
    gamma2: RateProfile = ZERO
    gamma3: RateProfile = ZERO
    omega: RateProfile = ZERO

    @classmethod
    def eternal(cls) -> "PhaseCovariantParams":
        """gamma_1 = gamma_2 = 1, gamma_3 = -tanh(t)/2: canonical rate negative for all t > 0."""
        one = RateProfile.constant(1.0)
        return cls(one, one, RateProfile.tanh_eternal(0.5))

    def rates(self, t):
        return self.gamma1(t), self.gamma2(t), self.gamma3(t)


class Propagator(NamedTuple):
    """Integrated rate functions at one time or along a time array."""

    gamma: np.ndarray
    gamma_tilde: np.ndarray
    omega: np.ndarray
    g: np.ndarray


def _half_sum(p: PhaseCovariantParams):
    return lambda s: 0.5 * (p.gamma1(s) + p.gamma2(s))


def propagator(p: PhaseCovariantParams, t) -> Propagator:
    """Gamma, Gamma~, Omega and G at ``t`` (scalar or increasing array starting >= 0)."""
    half = _half_sum(p)
    if np.ndim(t) == 0:
        t = float(t)

        def big_gamma(s):
            return integrate_adaptive(half, 0.0, s, QUAD_TOL)

        g = 0.0
        if not p.gamma2.is_zero:
            g = integrate_adaptive(lambda s: np.exp(big_gamma(s)) * 0.5 * p.gamma2(s), 0.0, t, QUAD_TOL)
        return Propagator(
            big_gamma(t),
            integrate_adaptive(p.gamma3, 0.0, t, QUAD_TOL),
            integrate_adaptive(lambda s: 2.0 * p.omega(s), 0.0, t, QUAD_TOL),
            g,
        )

    times = np.asarray(t, dtype=float)
    lead = times.size == 0 or times[0] != 0.0
    if lead:
        times = np.concatenate(([0.0], times))
    gamma = cumulative_adaptive(half, times, QUAD_TOL)
    gamma_tilde = cumulative_adaptive(p.gamma3, times, QUAD_TOL)
    omega = cumulative_adaptive(lambda s: 2.0 * p.omega(s), times, QUAD_TOL)
    g = np.zeros_like(times)
    if not p.gamma2.is_zero:
        # the inner Gamma(s) restarts from the stored value at each segment's left end
        for k in range(1, len(times)):
            t0, base = times[k - 1], gamma[k - 1]

            def integrand(s, t0=t0, base=base):
                inner = base + integrate_adaptive(half, t0, s, QUAD_TOL, min_depth=0)
                return np.exp(inner) * 0.5 * p.gamma2(s)

            g[k] = g[k - 1] + integrate_adaptive(integrand, t0, times[k], QUAD_TOL, min_depth=0)
    out = Propagator(gamma, gamma_tilde, omega, g)
    if lead:
        out = Propagator(*(x[1:] for x in out))
    return out


def initial_state(phi: float) -> np.ndarray:
    psi = (np.exp(1j * phi) * PLUS + MINUS) / np.sqrt(2)
    return np.outer(psi, psi.conj())


def initial_derivative(phi: float) -> np.ndarray:
    dpsi = 1j * np.exp(1j * phi) * PLUS / np.sqrt(2)
    psi = (np.exp(1j * phi) * PLUS + MINUS) / np.sqrt(2)
    return np.outer(dpsi, psi.conj()) + np.outer(psi, dpsi.conj())


def apply(prop: Propagator, rho0: np.ndarray, affine: bool = True) -> np.ndarray:
    """Act with the solution map on ``rho0``.

    With ``affine=False`` only the linear part is applied, which is how a
    traceless phase derivative propagates.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    decay = np.exp(-np.asarray(prop.gamma))
    coh = np.exp(1j * np.asarray(prop.omega) - 0.5 * np.asarray(prop.gamma) - np.asarray(prop.gamma_tilde))
    p1 = decay * ((np.asarray(prop.g) if affine else 0.0) + rho0[0, 0].real)
    q = rho0[0, 1] * coh
    out = np.empty(np.shape(p1) + (2, 2), dtype=complex)
    out[..., 0, 0] = p1
    out[..., 0, 1] = q
    out[..., 1, 0] = np.conj(q)
    # a traceless input keeps its lower diagonal entry at exactly -P1
    out[..., 1, 1] = 1.0 - p1 if affine else -p1
    return out


def evolve_state(p: PhaseCovariantParams, rho0, t) -> np.ndarray:
    return apply(propagator(p, t), rho0)


def evolve(p: PhaseCovariantParams, phi: float, t) -> np.ndarray:
    """rho(t) for the probe state at phase ``phi``; a stack when ``t`` is an array."""
    return apply(propagator(p, t), initial_state(phi))


def hss(p: PhaseCovariantParams, phi: float, t, prop: Propagator | None = None):
    """HSS of the evolved probe from the exactly propagated phase derivative."""
    prop = propagator(p, t) if prop is None else prop
    return hss_from_derivative(apply(prop, initial_derivative(phi), affine=False))


def chi(p: PhaseCovariantParams, phi: float, t, prop: Propagator | None = None):
    """Closed-form d HSS/dt."""
    prop = propagator(p, t) if prop is None else prop
    g1, g2, g3 = p.rates(t)
    c2, s2 = np.cos(phi) ** 2, np.sin(phi) ** 2
    gam, gt = np.asarray(prop.gamma), np.asarray(prop.gamma_tilde)
    root = np.sqrt(np.exp(gam - 2.0 * gt) * c2 + s2)
    out = (
        -0.125 * np.exp(-2.0 * gt) * (g1 + g2 + 4.0 * g3) * c2 / root
        - 0.25 * np.exp(-gam) * (g1 + g2) * s2 / root
    )
    return float(out) if np.ndim(out) == 0 else out


def blp_pair(phi: float):
    """Orthogonal probe states at phi +- pi/2; their difference is twice the phase tangent."""
    return initial_state(phi + np.pi / 2), initial_state(phi - np.pi / 2)


def trace_distance(p: PhaseCovariantParams, phi: float, t, prop: Propagator | None = None):
    prop = propagator(p, t) if prop is None else prop
    r1, r2 = blp_pair(phi)
    return trace_distance_stack(apply(prop, r1), apply(prop, r2))
