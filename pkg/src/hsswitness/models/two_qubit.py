"""Two qubits, each decaying into its own leaky cavity (Lorentzian reservoir).

Basis order is {|11>, |10>, |01>, |00>}. Each qubit undergoes amplitude
damping with the coherence characteristic function

    P(t) = e^{-lambda t} [cos(Gamma t/2) + (lambda/Gamma) sin(Gamma t/2)]^2,
    Gamma = sqrt(2 gamma0 lambda - lambda^2),

which turns hyperbolic for lambda > 2 gamma0 (weak coupling).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from ..linalg import validate_density
from ._cavity import damped_amplitude
from .states import phase_state

KET0 = np.array([0, 1], dtype=complex)  # single-qubit order {|1>, |0>}
KET1 = np.array([1, 0], dtype=complex)


@dataclass(frozen=True)
class TwoQubitParams:
    gamma0: float = 1.0
    lam: float = 1.0

    def __post_init__(self):
        if not (self.gamma0 > 0 and self.lam > 0):
            raise ValueError("gamma0 and lambda must be positive")

    @property
    def strong_coupling(self) -> bool:
        return self.gamma0 > self.lam / 2


def coherence_function(p: TwoQubitParams, t):
    """P(t) in both coupling regimes and at the critical point lambda = 2 gamma0.

    P is the squared single-excitation amplitude with d = sqrt(lambda^2 -
    2 gamma0 lambda) = i Gamma, so the strong-coupling trigonometric form and
    its hyperbolic continuation come out of the same expression.
    """
    d = cmath.sqrt(p.lam * p.lam - 2.0 * p.gamma0 * p.lam)
    amp = damped_amplitude(p.lam, d, t).real
    out = amp * amp
    return float(out) if out.ndim == 0 else out


def _apply_P(rho0: np.ndarray, P) -> np.ndarray:
    P = np.asarray(P, dtype=float)
    r = np.asarray(rho0, dtype=complex)
    sq = np.sqrt(P)
    out = np.zeros(P.shape + (4, 4), dtype=complex)
    out[..., 0, 0] = r[0, 0] * P * P
    out[..., 1, 1] = r[1, 1] * P + r[0, 0] * P * (1 - P)
    out[..., 2, 2] = r[2, 2] * P + r[0, 0] * P * (1 - P)
    out[..., 3, 3] = 1.0 - (out[..., 0, 0] + out[..., 1, 1] + out[..., 2, 2]).real
    out[..., 0, 1] = r[0, 1] * P**1.5
    out[..., 0, 2] = r[0, 2] * P**1.5
    # |11><00| picks up sqrt(P) from each qubit, so it scales its own initial value
    out[..., 0, 3] = r[0, 3] * P
    out[..., 1, 2] = r[1, 2] * P
    out[..., 1, 3] = sq * (r[1, 3] + r[0, 2] * (1 - P))
    out[..., 2, 3] = sq * (r[2, 3] + r[0, 1] * (1 - P))
    iu = np.triu_indices(4, 1)
    out[..., iu[1], iu[0]] = np.conj(out[..., iu[0], iu[1]])
    return out


def kraus(P: float):
    """Single-qubit amplitude-damping Kraus pair in the {|1>, |0>} order."""
    k0 = np.array([[np.sqrt(P), 0], [0, 1]], dtype=complex)
    k1 = np.array([[0, 0], [np.sqrt(1 - P), 0]], dtype=complex)
    return k0, k1


def evolve(p: TwoQubitParams, rho0, t, check: bool = True) -> np.ndarray:
    """Element-wise two-qubit solution; a stack when ``t`` is an array."""
    out = _apply_P(rho0, coherence_function(p, t))
    if check:
        for m in out.reshape(-1, 4, 4):
            validate_density(m, 1e-8)
    return out


def initial_state(phi: float) -> np.ndarray:
    """(e^{i phi}|11> + |10> + |01> + |00>)/2."""
    return phase_state(4, phi)


def hss_closed_form(P):
    P = np.asarray(P, dtype=float)
    out = 0.25 * np.sqrt(P * (P * (4.0 * P - 3.0) + 2.0))
    return float(out) if out.ndim == 0 else out


def trace_distance_closed_form(P):
    P = np.asarray(P, dtype=float)
    out = np.sqrt(P * (2.0 - 2.0 * P + P * P))
    return float(out) if out.ndim == 0 else out


def hss_and_D(p: TwoQubitParams, t):
    """(HSS, trace distance of the |++>, |--> pair), both phase independent."""
    P = coherence_function(p, t)
    return hss_closed_form(P), trace_distance_closed_form(P)


def blp_pair():
    plus = (KET0 + KET1) / np.sqrt(2)
    minus = (KET0 - KET1) / np.sqrt(2)
    pp = np.kron(plus, plus)
    mm = np.kron(minus, minus)
    return np.outer(pp, pp.conj()), np.outer(mm, mm.conj())
