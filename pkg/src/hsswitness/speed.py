"""Quantum distances and statistical speeds.

``hss_from_derivative`` is the Hilbert-Schmidt speed computed straight from
the Frobenius norm of the phase derivative; every other quantity here goes
through the Jacobi eigensolver.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from . import tolerances as tol
from .errors import DimensionMismatch, NonHermitianInput, NonTracelessInput
from .linalg import as_matrix, herm_eig


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not alpha >= 1.0:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    return alpha


def quantum_distance(rho, sigma, alpha: float = 1.0) -> float:
    """D_alpha(rho, sigma) = (1/2 Tr|rho - sigma|^alpha)^(1/alpha)."""
    alpha = _check_alpha(alpha)
    rho, sigma = as_matrix(rho), as_matrix(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"{rho.shape} vs {sigma.shape}")
    lam = np.abs(herm_eig(rho - sigma).eigenvalues)
    return float((0.5 * np.sum(lam**alpha)) ** (1.0 / alpha))


def trace_distance(rho, sigma) -> float:
    return quantum_distance(rho, sigma, 1.0)


def hilbert_schmidt_distance(rho, sigma) -> float:
    """sqrt(Tr (rho - sigma)^2), straight from the Frobenius norm.

    This is the conventional Hilbert-Schmidt distance. It is sqrt(2) times
    ``quantum_distance(rho, sigma, 2)``, whose 1/2 normalization makes the two
    coincide with the trace distance for qubits.
    """
    rho, sigma = as_matrix(rho), as_matrix(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"{rho.shape} vs {sigma.shape}")
    return float(np.linalg.norm(rho - sigma))


def statistical_speed(drho, alpha: float = 2.0) -> float:
    """S_alpha = (1/2 Tr|d rho/d phi|^alpha)^(1/alpha) for a traceless Hermitian derivative."""
    alpha = _check_alpha(alpha)
    d = as_matrix(drho)
    tr = abs(np.trace(d))
    if tr > tol.TRACELESS_TOL:
        raise NonTracelessInput(f"phase derivative has trace {tr:.3e}")
    lam = np.abs(herm_eig(d).eigenvalues)
    return float((0.5 * np.sum(lam**alpha)) ** (1.0 / alpha))


def hss_from_derivative(drho):
    """Hilbert-Schmidt speed sqrt(1/2 Tr[(d rho/d phi)^2]).

    Accepts a single matrix or a stack ``(..., n, n)`` and never diagonalizes:
    for Hermitian X, Tr X^2 is the squared Frobenius norm.
    """
    d = np.asarray(drho, dtype=complex)
    if d.ndim < 2 or d.shape[-1] != d.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {d.shape}")
    defect = np.max(np.abs(d - np.swapaxes(d, -1, -2).conj())) if d.size else 0.0
    if defect > tol.NON_HERMITIAN_TOL:
        raise NonHermitianInput(f"phase derivative is not Hermitian (defect {defect:.3e})")
    out = np.sqrt(0.5 * np.sum(np.abs(d) ** 2, axis=(-2, -1)))
    return float(out) if out.ndim == 0 else out


def hss_numeric(
    state_at_phi: Callable[[float], np.ndarray], phi: float, dphi: float = tol.DEFAULT_DPHI
):
    """HSS from a central difference of ``state_at_phi`` around ``phi``.

    ``state_at_phi`` may return a stack of states (e.g. one per time sample);
    the result then has the stack's leading shape.
    """
    if not 1e-7 <= dphi <= 1e-2:
        raise ValueError(f"dphi must lie in [1e-7, 1e-2], got {dphi}")
    plus = np.asarray(state_at_phi(phi + dphi), dtype=complex)
    minus = np.asarray(state_at_phi(phi - dphi), dtype=complex)
    return hss_from_derivative((plus - minus) / (2.0 * dphi))
