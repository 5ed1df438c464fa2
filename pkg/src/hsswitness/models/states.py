"""The phase-encoded probe state used by every model."""

from __future__ import annotations

import numpy as np


def phase_vector(n: int, phi: float) -> np.ndarray:
    """(e^{i phi}|1> + |2> + ... + |n>)/sqrt(n), phase on the first basis vector."""
    v = np.ones(n, dtype=complex)
    v[0] = np.exp(1j * phi)
    return v / np.sqrt(n)


def phase_state(n: int, phi: float) -> np.ndarray:
    v = phase_vector(n, phi)
    return np.outer(v, v.conj())


def phase_state_derivative(n: int, phi: float) -> np.ndarray:
    """Exact d/dphi of ``phase_state``: only the first row and column are nonzero."""
    d = np.zeros((n, n), dtype=complex)
    d[0, 1:] = 1j * np.exp(1j * phi) / n
    d[1:, 0] = -1j * np.exp(-1j * phi) / n
    return d


def embed(vec, basis) -> np.ndarray:
    """State ``sum_k vec[k] |basis[k]>`` as a density matrix in the computational frame."""
    psi = np.asarray(basis, dtype=complex).T @ np.asarray(vec, dtype=complex)
    return np.outer(psi, psi.conj())


def family_state(basis, phi: float) -> np.ndarray:
    """Probe state with the phase on ``basis[0]``; ``basis`` rows are kets."""
    return embed(phase_vector(len(basis), phi), basis)


def family_derivative(basis, phi: float) -> np.ndarray:
    b = np.asarray(basis, dtype=complex)
    n = len(b)
    psi = b.T @ phase_vector(n, phi)
    dpsi = 1j * np.exp(1j * phi) * b[0] / np.sqrt(n)
    return np.outer(dpsi, psi.conj()) + np.outer(psi, dpsi.conj())
