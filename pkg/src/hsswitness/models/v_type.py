"""V-type three-level atom in a dissipative cavity, with spontaneously generated interference.

Everything lives in the rotated frame varrho = U rho U^dagger whose basis is
{|+>, |->, |0>} with |+-> = (|2> +- |1>)/sqrt(2). The two upper combinations
decay through independent channels with amplitudes

    G_pm(t) = e^{-lambda t/2} [cosh(d_pm t/2) + (lambda/d_pm) sinh(d_pm t/2)],
    d_pm = sqrt(lambda^2 - 2 lambda gamma (1 +- |theta|)),

and d_pm turns imaginary in the strong-coupling regime.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from ..errors import NonContractiveAmplitude
from ._cavity import damped_amplitude
from .states import phase_state

AMPLITUDE_TOL = 1e-10

# rotation taking the {|2>, |1>, |0>} basis to the {|+>, |->, |0>} frame
U = np.array([[1, -1, 0], [1, 1, 0], [0, 0, np.sqrt(2)]], dtype=complex) / np.sqrt(2)


@dataclass(frozen=True)
class VTypeParams:
    gamma: float = 1.0
    lam: float = 1.0
    theta: float = 0.0

    def __post_init__(self):
        if not (self.gamma > 0 and self.lam > 0):
            raise ValueError("gamma and lambda must be positive")
        if not -1.0 <= self.theta <= 1.0:
            raise ValueError(f"theta must lie in [-1, 1], got {self.theta}")

    def d(self, sign: int) -> complex:
        return cmath.sqrt(self.lam**2 - 2.0 * self.lam * self.gamma * (1.0 + sign * abs(self.theta)))


def amplitudes(p: VTypeParams, t):
    """(G_+, G_-) as complex values; the imaginary parts vanish up to rounding."""
    gp = damped_amplitude(p.lam, p.d(+1), t)
    gm = damped_amplitude(p.lam, p.d(-1), t)
    if np.ndim(gp) == 0:
        return complex(gp), complex(gm)
    return gp, gm


def kraus(gp: complex, gm: complex):
    if abs(gp) > 1 + AMPLITUDE_TOL or abs(gm) > 1 + AMPLITUDE_TOL:
        raise NonContractiveAmplitude(f"|G+| = {abs(gp):.6g}, |G-| = {abs(gm):.6g}")
    k1 = np.diag([gp, gm, 1.0]).astype(complex)
    k2 = np.zeros((3, 3), dtype=complex)
    k3 = np.zeros((3, 3), dtype=complex)
    k2[2, 0] = np.sqrt(max(0.0, 1.0 - abs(gp) ** 2))
    k3[2, 1] = np.sqrt(max(0.0, 1.0 - abs(gm) ** 2))
    return k1, k2, k3


def evolve(p: VTypeParams, rho0, t) -> np.ndarray:
    """Kraus evolution in the rotated frame; a stack when ``t`` is an array."""
    rho0 = np.asarray(rho0, dtype=complex)
    gp, gm = amplitudes(p, t)
    if np.ndim(gp) == 0:
        return sum(k @ rho0 @ k.conj().T for k in kraus(gp, gm))
    return np.array([sum(k @ rho0 @ k.conj().T for k in kraus(a, b)) for a, b in zip(gp, gm)])


def initial_state(phi: float) -> np.ndarray:
    """(e^{i phi}|+> + |-> + |0>)/sqrt(3) in the rotated frame."""
    return phase_state(3, phi)


def hss_and_D(p: VTypeParams, t):
    """Closed-form HSS (phase independent) and trace distance of the |psi_+->, pair."""
    gp, gm = amplitudes(p, t)
    ap, am = np.abs(gp), np.abs(gm)
    hss = ap * np.sqrt(am * am + 1.0) / 3.0
    if np.ndim(hss) == 0:
        return float(hss), float(ap)
    return hss, ap


def blp_pair():
    """|psi_pm> = (|+> +- |0>)/sqrt(2)."""
    v1 = np.array([1, 0, 1], dtype=complex) / np.sqrt(2)
    v2 = np.array([1, 0, -1], dtype=complex) / np.sqrt(2)
    return np.outer(v1, v1.conj()), np.outer(v2, v2.conj())
